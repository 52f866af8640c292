//! Serde mirrors of the core types. Rationals travel as `"p/q"` strings so
//! that every value survives a round trip exactly.

use std::collections::BTreeMap;

use braidlaz_core::braid::{BraidCobordism, BraidWord, ClosureSummary, GarsideNormalForm, Permutation};
use braidlaz_core::fgl::{Bud, BudDefects, GradedPolynomial, LogSeries, Monomial, Var};
use braidlaz_core::kz::{
    CMatrix, HolonomyResult, InfinitesimalSystem, RationalMatrix, RelationReport, TriangleViolation,
};
use braidlaz_core::rational::{format_rational, parse_rational};
use braidlaz_core::Rational;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("not a rational number: {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidJson {
    pub n: usize,
    pub word: Vec<i64>,
}

impl From<&BraidWord> for BraidJson {
    fn from(w: &BraidWord) -> Self {
        BraidJson {
            n: w.strands(),
            word: w.to_signed(),
        }
    }
}

impl TryFrom<&BraidJson> for BraidWord {
    type Error = CliError;
    fn try_from(j: &BraidJson) -> Result<Self, CliError> {
        BraidWord::from_signed(j.n, &j.word).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub n: usize,
    pub inf: i64,
    pub factors: Vec<Vec<usize>>,
}

impl From<&GarsideNormalForm> for NormalFormJson {
    fn from(nf: &GarsideNormalForm) -> Self {
        NormalFormJson {
            n: nf.strands,
            inf: nf.inf,
            factors: nf.factors.iter().map(Permutation::images).collect(),
        }
    }
}

impl TryFrom<&NormalFormJson> for GarsideNormalForm {
    type Error = CliError;
    fn try_from(j: &NormalFormJson) -> Result<Self, CliError> {
        let factors = j
            .factors
            .iter()
            .map(|f| {
                if f.len() != j.n {
                    return Err(CliError::Usage(format!(
                        "factor {f:?} is not a permutation of {} points",
                        j.n
                    )));
                }
                Permutation::from_images(f).map_err(|e| CliError::Usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let nf = GarsideNormalForm {
            strands: j.n,
            inf: j.inf,
            factors,
        };
        if !nf.is_valid() {
            return Err(CliError::Usage("factors are not in left normal form".into()));
        }
        Ok(nf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureJson {
    pub strands: usize,
    pub components: usize,
    pub exponent_sum: i64,
}

impl From<&ClosureSummary> for ClosureJson {
    fn from(c: &ClosureSummary) -> Self {
        ClosureJson {
            strands: c.strands,
            components: c.components,
            exponent_sum: c.exponent_sum,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismJson {
    pub intervals: usize,
    pub top: Vec<[i64; 3]>,
    pub bottom: Vec<[i64; 3]>,
    pub permutation: Vec<usize>,
}

impl From<&BraidCobordism> for CobordismJson {
    fn from(c: &BraidCobordism) -> Self {
        CobordismJson {
            intervals: c.intervals,
            top: c.top.clone(),
            bottom: c.bottom.clone(),
            permutation: c.permutation.images(),
        }
    }
}

pub type RationalRows = Vec<Vec<String>>;

pub fn matrix_to_json(m: &RationalMatrix) -> RationalRows {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_json(rows: &RationalRows) -> Result<RationalMatrix, CliError> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::from_rows(parsed).ok_or_else(|| CliError::Usage("matrix rows have different lengths".into()))
}

/// `{"n": 3, "dim": 2, "A": {"1,2": [["1/2","0"],["0","1/2"]], …}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub dim: usize,
    #[serde(rename = "A")]
    pub a: BTreeMap<String, RationalRows>,
}

impl From<&InfinitesimalSystem> for SystemJson {
    fn from(sys: &InfinitesimalSystem) -> Self {
        SystemJson {
            n: sys.points(),
            dim: sys.dim(),
            a: sys
                .iter()
                .map(|((i, j), m)| (format!("{i},{j}"), matrix_to_json(m)))
                .collect(),
        }
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("bad pair key {key:?}; expected \"i,j\""));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

impl TryFrom<&SystemJson> for InfinitesimalSystem {
    type Error = CliError;
    fn try_from(j: &SystemJson) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (key, rows) in &j.a {
            if map.insert(parse_pair(key)?, matrix_from_json(rows)?).is_some() {
                return Err(CliError::Usage(format!("pair {key:?} given twice")));
            }
        }
        InfinitesimalSystem::new(j.n, j.dim, map).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub triple: [usize; 3],
    pub left_vanishes: bool,
    pub right_vanishes: bool,
    pub brackets_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub satisfied: bool,
    pub commuting_violations: Vec<[[usize; 2]; 2]>,
    pub triangle_violations: Vec<TriangleJson>,
    pub max_residual: String,
}

impl From<&RelationReport> for ReportJson {
    fn from(r: &RelationReport) -> Self {
        ReportJson {
            satisfied: r.is_empty(),
            commuting_violations: r
                .commuting_violations
                .iter()
                .map(|&((a, b), (c, d))| [[a, b], [c, d]])
                .collect(),
            triangle_violations: r
                .triangle_violations
                .iter()
                .map(|t: &TriangleViolation| TriangleJson {
                    triple: [t.triple.0, t.triple.1, t.triple.2],
                    left_vanishes: t.left_vanishes,
                    right_vanishes: t.right_vanishes,
                    brackets_agree: t.brackets_agree,
                })
                .collect(),
            max_residual: format_rational(&r.max_residual),
        }
    }
}

impl TryFrom<&ReportJson> for RelationReport {
    type Error = CliError;
    fn try_from(j: &ReportJson) -> Result<Self, CliError> {
        Ok(RelationReport {
            commuting_violations: j
                .commuting_violations
                .iter()
                .map(|&[[a, b], [c, d]]| ((a, b), (c, d)))
                .collect(),
            triangle_violations: j
                .triangle_violations
                .iter()
                .map(|t| TriangleViolation {
                    triple: (t.triple[0], t.triple[1], t.triple[2]),
                    left_vanishes: t.left_vanishes,
                    right_vanishes: t.right_vanishes,
                    brackets_agree: t.brackets_agree,
                })
                .collect(),
            max_residual: rational(&j.max_residual)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

pub fn cmatrix_to_json(m: &CMatrix) -> Vec<Vec<ComplexJson>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(ComplexJson::from).collect())
        .collect()
}

pub fn cmatrix_from_json(rows: &[Vec<ComplexJson>]) -> Result<CMatrix, CliError> {
    CMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&z| z.into()).collect()).collect())
        .ok_or_else(|| CliError::Usage("matrix rows have different lengths".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolonomyJson {
    pub steps: usize,
    pub error_estimate: f64,
    pub matrix: Vec<Vec<ComplexJson>>,
}

impl From<&HolonomyResult> for HolonomyJson {
    fn from(h: &HolonomyResult) -> Self {
        HolonomyJson {
            steps: h.steps,
            error_estimate: h.error_estimate,
            matrix: cmatrix_to_json(&h.matrix),
        }
    }
}

impl TryFrom<&HolonomyJson> for HolonomyResult {
    type Error = CliError;
    fn try_from(j: &HolonomyJson) -> Result<Self, CliError> {
        Ok(HolonomyResult {
            matrix: cmatrix_from_json(&j.matrix)?,
            steps: j.steps,
            error_estimate: j.error_estimate,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: BTreeMap<String, u32>,
    pub coef: String,
}

/// `{"degree": m, "terms": [{"mono": {"x":1,"y":1,"a1":1}, "coef": "1"}]}`.
/// `degree` is the truncation bound for buds and series, else the total degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn new(p: &GradedPolynomial, degree: u32) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut mono = BTreeMap::new();
                for v in Var::ALL {
                    if m.var_exponent(v) > 0 {
                        mono.insert(v.name().to_string(), m.var_exponent(v));
                    }
                }
                for (k, &e) in m.gens().iter().enumerate() {
                    if e > 0 {
                        mono.insert(format!("a{}", k + 1), e);
                    }
                }
                TermJson {
                    mono,
                    coef: format_rational(c),
                }
            })
            .collect();
        PolyJson { degree, terms }
    }

    pub fn of_polynomial(p: &GradedPolynomial) -> Self {
        PolyJson::new(p, p.degree().unwrap_or(0))
    }

    pub fn to_polynomial(&self) -> Result<GradedPolynomial, CliError> {
        let mut out = GradedPolynomial::zero();
        for term in &self.terms {
            let mut vars = [0u32; 4];
            let mut gens: Vec<u32> = Vec::new();
            for (name, &e) in &term.mono {
                if let Some(v) = Var::from_name(name) {
                    vars[v.index()] += e;
                } else if let Some(k) = name
                    .strip_prefix('a')
                    .or_else(|| name.strip_prefix('v'))
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                {
                    if gens.len() < k {
                        gens.resize(k, 0);
                    }
                    gens[k - 1] += e;
                } else {
                    return Err(CliError::Usage(format!("unknown variable {name:?} in polynomial JSON")));
                }
            }
            out.add_term(Monomial::new(vars, gens), rational(&term.coef)?);
        }
        Ok(out)
    }
}

impl From<&Bud> for PolyJson {
    fn from(b: &Bud) -> Self {
        PolyJson::new(b.law(), b.degree())
    }
}

impl TryFrom<&PolyJson> for Bud {
    type Error = CliError;
    fn try_from(j: &PolyJson) -> Result<Self, CliError> {
        Bud::new(j.to_polynomial()?, j.degree).map_err(|e| CliError::Domain(e.to_string()))
    }
}

/// A logarithm as its polynomial in `t` truncated at `degree`.
impl From<&LogSeries> for PolyJson {
    fn from(l: &LogSeries) -> Self {
        PolyJson::new(&l.to_polynomial(Var::T), l.degree())
    }
}

impl TryFrom<&PolyJson> for LogSeries {
    type Error = CliError;
    fn try_from(j: &PolyJson) -> Result<Self, CliError> {
        LogSeries::from_polynomial(&j.to_polynomial()?, j.degree).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectsJson {
    pub zero: bool,
    pub associativity: PolyJson,
    pub commutativity: PolyJson,
    pub unit: PolyJson,
}

impl DefectsJson {
    pub fn new(d: &BudDefects, m: u32) -> Self {
        DefectsJson {
            zero: d.is_zero(),
            associativity: PolyJson::new(&d.associativity, m),
            commutativity: PolyJson::new(&d.commutativity, m),
            unit: PolyJson::new(&d.unit, m),
        }
    }
}
