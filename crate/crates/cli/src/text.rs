//! Plain-text formats: braid words with an `n=` header, polynomials in the
//! canonical sum notation, complex coordinates and loop specifications.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use braidlaz_core::braid::BraidWord;
use braidlaz_core::fgl::{GradedPolynomial, Monomial, Var};
use braidlaz_core::rational::parse_rational;
use braidlaz_core::Rational;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::CliError;

/// `"n=3\n1 2 -1\n"`.
pub fn format_braid(w: &BraidWord) -> String {
    format!("n={}\n{}\n", w.strands(), w)
}

/// Inverse of [`format_braid`]; the letters may span several lines.
pub fn parse_braid(text: &str) -> Result<BraidWord, CliError> {
    let text = text.trim_start();
    let (header, rest) = text.split_once('\n').unwrap_or((text, ""));
    let n = header
        .trim()
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| {
            CliError::Usage(format!(
                "expected a header line `n=<strands>`, found {:?}",
                header.trim()
            ))
        })?;
    parse_word(n, rest)
}

/// Whitespace-separated signed generator indices.
pub fn parse_word(strands: usize, letters: &str) -> Result<BraidWord, CliError> {
    let letters = letters
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("not a braid letter: {tok:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BraidWord::from_signed(strands, &letters).map_err(|e| CliError::Usage(e.to_string()))
}

/// Parses the canonical polynomial notation, e.g. `x + y - 1/2*a1*x^2*y`.
///
/// Generators may be written `a<k>` or `v<k>`; both name `α_k`. A term is a
/// `*`-separated product of at most one rational and any number of powers.
pub fn parse_polynomial(text: &str) -> Result<GradedPolynomial, CliError> {
    let bad = |msg: String| CliError::Usage(format!("polynomial {:?}: {msg}", text.trim()));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input".into()));
    }
    let mut out = GradedPolynomial::zero();
    let chars = compact.char_indices().peekable();
    let mut start = 0;
    let mut pieces = Vec::new();
    // split on + / - signs that begin a term (not the sign of an exponent)
    for (i, c) in chars {
        if (c == '+' || c == '-') && i > 0 {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    pieces.push(&compact[start..]);
    for piece in pieces {
        let (negative, body) = match piece.as_bytes().first() {
            Some(b'-') => (true, &piece[1..]),
            Some(b'+') => (false, &piece[1..]),
            _ => (false, piece),
        };
        if body.is_empty() {
            return Err(bad("dangling sign".into()));
        }
        let mut coef = Rational::one();
        let mut vars = [0u32; 4];
        let mut gens: Vec<u32> = Vec::new();
        let mut seen_coef = false;
        for factor in body.split('*') {
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                if seen_coef {
                    return Err(bad(format!("two coefficients in term {body:?}")));
                }
                seen_coef = true;
                coef = parse_rational(factor).ok_or_else(|| bad(format!("bad coefficient {factor:?}")))?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, e)) => (
                    name,
                    e.parse::<u32>()
                        .map_err(|_| bad(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            if let Some(v) = Var::from_name(name) {
                vars[v.index()] += exp;
            } else if let Some(k) = name
                .strip_prefix('a')
                .or_else(|| name.strip_prefix('v'))
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
            {
                if gens.len() < k {
                    gens.resize(k, 0);
                }
                gens[k - 1] += exp;
            } else {
                return Err(bad(format!("unknown factor {factor:?}")));
            }
        }
        if negative {
            coef = -coef;
        }
        out.add_term(Monomial::new(vars, gens), coef);
    }
    Ok(out)
}

/// A rational complex number: `3`, `-1/2`, `2i`, `1/3-1/2i`, `i`.
pub fn parse_rational_complex(text: &str) -> Result<Complex<Rational>, CliError> {
    let (re, im) = split_complex(text)?;
    let part =
        |s: &str| parse_rational(s).ok_or_else(|| CliError::Usage(format!("bad complex number {:?}", text.trim())));
    Ok(Complex::new(
        if re.is_empty() { Rational::zero() } else { part(&re)? },
        match im.as_deref() {
            None => Rational::zero(),
            Some(s) => part(s)?,
        },
    ))
}

/// A floating complex number in the same notation.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let (re, im) = split_complex(text)?;
    let part = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("bad complex number {:?}", text.trim())))
    };
    Ok(Complex64::new(
        if re.is_empty() { 0.0 } else { part(&re)? },
        match im.as_deref() {
            None => 0.0,
            Some(s) => part(s)?,
        },
    ))
}

/// Splits into real text and, if present, imaginary text with `i` removed.
fn split_complex(text: &str) -> Result<(String, Option<String>), CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::Usage("empty complex number".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok((s, None));
    };
    // the imaginary part starts at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .unwrap_or(0);
    let (re, im) = body.split_at(split);
    let im = match im {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.strip_prefix('+').unwrap_or(other).to_string(),
    };
    Ok((re.to_string(), Some(im)))
}

/// A configuration as comma-separated complex numbers.
pub fn parse_rational_point(text: &str) -> Result<Vec<Complex<Rational>>, CliError> {
    text.split(',').map(parse_rational_complex).collect()
}

pub fn parse_point(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',').map(parse_complex).collect()
}

/// `re+imi` with shortest round-trip floats.
pub fn format_complex(z: &Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Loop specification as accepted on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum LoopSpec {
    /// `circle:i,j,r`
    Circle {
        moving: usize,
        around: usize,
        radius_factor: f64,
    },
    /// `offset:i,r`
    Offset { moving: usize, radius: f64 },
    /// `polyline:@file`; one configuration per non-empty line.
    Polyline(PathBuf),
}

pub fn parse_loop_spec(text: &str) -> Result<LoopSpec, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "bad loop {text:?}; expected circle:i,j,r, offset:i,r or polyline:@file"
        ))
    };
    let (kind, args) = text.split_once(':').ok_or_else(bad)?;
    match kind {
        "circle" => {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let [i, j, r] = parts[..] else { return Err(bad()) };
            Ok(LoopSpec::Circle {
                moving: i.parse().map_err(|_| bad())?,
                around: j.parse().map_err(|_| bad())?,
                radius_factor: r.parse().map_err(|_| bad())?,
            })
        }
        "offset" => {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let [i, r] = parts[..] else { return Err(bad()) };
            Ok(LoopSpec::Offset {
                moving: i.parse().map_err(|_| bad())?,
                radius: r.parse().map_err(|_| bad())?,
            })
        }
        "polyline" => Ok(LoopSpec::Polyline(PathBuf::from(
            args.strip_prefix('@').ok_or_else(bad)?,
        ))),
        _ => Err(bad()),
    }
}

/// Reads a polyline file: each non-empty, non-`#` line is one configuration.
pub fn parse_polyline(text: &str, origin: &Path) -> Result<Vec<Vec<Complex64>>, CliError> {
    let rows: Vec<Vec<Complex64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_point)
        .collect::<Result<_, _>>()?;
    if rows.len() < 2 {
        return Err(CliError::Usage(format!(
            "{}: a polyline needs at least two configurations",
            origin.display()
        )));
    }
    Ok(rows)
}

/// Rows of rationals, one matrix row per line, for text output.
pub fn format_matrix<T>(rows: &[Vec<T>], cell: impl Fn(&T) -> String) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(&cell).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use braidlaz_core::rational::ratio;

    #[test]
    fn braid_round_trip() {
        let w = BraidWord::from_signed(3, &[1, 2, -1]).unwrap();
        let text = format_braid(&w);
        assert_eq!(text, "n=3\n1 2 -1\n");
        assert_eq!(parse_braid(&text).unwrap(), w);
        let empty = BraidWord::identity(4).unwrap();
        assert_eq!(parse_braid(&format_braid(&empty)).unwrap(), empty);
        assert!(parse_braid("1 2").is_err());
        assert!(parse_braid("n=3\n1 3").is_err());
        assert!(parse_braid("n=3\n1 x").is_err());
    }

    #[test]
    fn polynomial_notation() {
        let p = parse_polynomial("x + y + a1*x*y").unwrap();
        assert_eq!(p.to_string(), "x + y + a1*x*y");
        let q = parse_polynomial("t - 1/2 * v1*t^2").unwrap();
        assert_eq!(q.to_string(), "t - 1/2*a1*t^2");
        assert_eq!(parse_polynomial("-x+x").unwrap(), GradedPolynomial::zero());
        assert_eq!(
            parse_polynomial("3/6").unwrap(),
            GradedPolynomial::constant(ratio(1, 2))
        );
        assert_eq!(parse_polynomial("0").unwrap(), GradedPolynomial::zero());
        for bad in ["", "x +", "2*3*x", "w", "x^-1", "a0", "x^y"] {
            assert!(parse_polynomial(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_numbers() {
        assert_eq!(
            parse_rational_complex("1/2-3i").unwrap(),
            Complex::new(ratio(1, 2), ratio(-3, 1))
        );
        assert_eq!(
            parse_rational_complex("i").unwrap(),
            Complex::new(ratio(0, 1), ratio(1, 1))
        );
        assert_eq!(
            parse_rational_complex("-2").unwrap(),
            Complex::new(ratio(-2, 1), ratio(0, 1))
        );
        assert_eq!(parse_complex("1e-3+2.5i").unwrap(), Complex64::new(1e-3, 2.5));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("nan").is_err());
        assert_eq!(format_complex(&Complex64::new(1.0, -0.5)), "1-0.5i");
    }

    #[test]
    fn loop_specs() {
        assert_eq!(
            parse_loop_spec("circle:1,2,0.75").unwrap(),
            LoopSpec::Circle {
                moving: 1,
                around: 2,
                radius_factor: 0.75
            }
        );
        assert_eq!(
            parse_loop_spec("offset:2,0.3").unwrap(),
            LoopSpec::Offset { moving: 2, radius: 0.3 }
        );
        assert_eq!(
            parse_loop_spec("polyline:@p.txt").unwrap(),
            LoopSpec::Polyline("p.txt".into())
        );
        for bad in ["circle:1,2", "square:1", "polyline:p.txt", "circle"] {
            assert!(parse_loop_spec(bad).is_err());
        }
        let rows = parse_polyline("# square\n0,1\n1i,1\n\n0,1\n", Path::new("x")).unwrap();
        assert_eq!(rows.len(), 3);
    }
}
