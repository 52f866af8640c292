use alloc::vec::Vec;

use super::{BraidError, BraidWord, Letter};

/// A presentation `(generators, relators)`: the group is the free group on
/// the generators modulo the normal closure of the relators.
///
/// Relators are stored as braid-shaped words on `generator_count + 1`
/// strands. Only [`GroupCode::artin`] comes with a decision procedure
/// (the Garside normal form); other codes are accepted for generating
/// equal word pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCode {
    generator_count: usize,
    relators: Vec<BraidWord>,
}

impl GroupCode {
    pub fn new(generator_count: usize, relators: Vec<BraidWord>) -> Result<Self, BraidError> {
        for (index, r) in relators.iter().enumerate() {
            if r.strands() != generator_count + 1 {
                return Err(BraidError::IncompatibleCode {
                    index,
                    reason: "relator is not written over the declared generators",
                });
            }
        }
        Ok(GroupCode {
            generator_count,
            relators,
        })
    }

    /// The Artin presentation of `B_n`: far commutation
    /// `σ_i σ_j σ_i^{-1} σ_j^{-1}` for `j > i + 1`, then the braid relators
    /// `σ_i σ_{i+1} σ_i σ_{i+1}^{-1} σ_i^{-1} σ_{i+1}^{-1}`.
    pub fn artin(strands: usize) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        let g = strands - 1;
        let mut relators = Vec::new();
        for i in 1..=g {
            for j in i + 2..=g {
                relators.push(BraidWord::new(
                    strands,
                    alloc::vec![Letter::pos(i), Letter::pos(j), Letter::neg(i), Letter::neg(j)],
                )?);
            }
        }
        for i in 1..g {
            let j = i + 1;
            relators.push(BraidWord::new(
                strands,
                alloc::vec![
                    Letter::pos(i),
                    Letter::pos(j),
                    Letter::pos(i),
                    Letter::neg(j),
                    Letter::neg(i),
                    Letter::neg(j)
                ],
            )?);
        }
        Ok(GroupCode {
            generator_count: g,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[BraidWord] {
        &self.relators
    }
}

/// Splices relator `relator_index` into `w` before letter `position`.
/// With a conjugator `g` the spliced word is `g r g^{-1}`. The result equals
/// `w` in the presented group.
pub fn insert_relator(
    w: &BraidWord,
    code: &GroupCode,
    relator_index: usize,
    position: usize,
    conjugator: Option<&BraidWord>,
) -> Result<BraidWord, BraidError> {
    let relator = code.relators.get(relator_index).ok_or(BraidError::RelatorOutOfRange {
        index: relator_index,
        count: code.relators.len(),
    })?;
    if relator.strands() != w.strands() {
        return Err(BraidError::IncompatibleCode {
            index: relator_index,
            reason: "strand count differs from the word",
        });
    }
    if position > w.len() {
        return Err(BraidError::PositionOutOfRange { position, len: w.len() });
    }
    let mut spliced: Vec<Letter> = Vec::new();
    if let Some(g) = conjugator {
        w.same_strands(g)?;
        spliced.extend_from_slice(g.letters());
        spliced.extend_from_slice(relator.letters());
        spliced.extend_from_slice(g.inverse().letters());
    } else {
        spliced.extend_from_slice(relator.letters());
    }
    let mut letters = w.letters()[..position].to_vec();
    letters.extend(spliced);
    letters.extend_from_slice(&w.letters()[position..]);
    BraidWord::new(w.strands(), letters)
}

#[cfg(test)]
mod tests {
    use super::super::{free_reduce, words_equal};
    use super::*;

    #[test]
    fn artin_code_sizes() {
        // B4: one far commutation (1,3) and two braid relators.
        let code = GroupCode::artin(4).unwrap();
        assert_eq!(code.generator_count(), 3);
        assert_eq!(code.relators().len(), 3);
        assert_eq!(GroupCode::artin(2).unwrap().relators().len(), 0);
    }

    #[test]
    fn relator_alone_is_trivial() {
        let code = GroupCode::artin(3).unwrap();
        let empty = BraidWord::identity(3).unwrap();
        let out = insert_relator(&empty, &code, 0, 0, None).unwrap();
        assert_eq!(out.to_signed(), alloc::vec![1, 2, 1, -2, -1, -2]);
        assert!(words_equal(&out, &empty).unwrap());
    }

    #[test]
    fn commuting_relator_in_b4() {
        let code = GroupCode::artin(4).unwrap();
        let s1 = BraidWord::from_signed(4, &[1]).unwrap();
        let out = insert_relator(&s1, &code, 0, 1, None).unwrap();
        assert_eq!(out.len(), 5);
        assert!(words_equal(&out, &s1).unwrap());
    }

    #[test]
    fn conjugated_insertion_then_reduction() {
        let code = GroupCode::artin(4).unwrap();
        let u = BraidWord::from_signed(4, &[2, -3, 1]).unwrap();
        let g = BraidWord::from_signed(4, &[3, 3, -1]).unwrap();
        let out = insert_relator(&u, &code, 2, 2, Some(&g)).unwrap();
        assert!(words_equal(&free_reduce(&out), &u).unwrap());
    }

    #[test]
    fn errors() {
        let code = GroupCode::artin(3).unwrap();
        let u = BraidWord::from_signed(3, &[1]).unwrap();
        assert_eq!(
            insert_relator(&u, &code, 5, 0, None),
            Err(BraidError::RelatorOutOfRange { index: 5, count: 1 })
        );
        assert_eq!(
            insert_relator(&u, &code, 0, 2, None),
            Err(BraidError::PositionOutOfRange { position: 2, len: 1 })
        );
        let bad = BraidWord::from_signed(4, &[1]).unwrap();
        assert!(GroupCode::new(2, alloc::vec![bad]).is_err());
    }
}
