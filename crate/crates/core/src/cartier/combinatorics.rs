use serde::{Deserialize, Serialize};

use super::{CartierError, Certificate, LIResult, Rank};

/// Summands of `I(A[t_1,1/t_1,...,t_n,1/t_n], B[...])`: one copy of `I`,
/// `n` copies of `LI` and `2^i C(n,i)` copies of `N^i I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerms {
    pub n: u32,
    #[serde(with = "decimal")]
    pub i_terms: u128,
    #[serde(with = "decimal")]
    pub l_terms: u128,
    /// `(i, count)` for `1 <= i <= n`; counts serialize as decimal strings.
    #[serde(with = "decimal_pairs")]
    pub n_terms: Vec<(u32, u128)>,
}

mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

mod decimal_pairs {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(u32, u128)], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(u32, String)> = v.iter().map(|(i, c)| (*i, c.to_string())).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(u32, u128)>, D::Error> {
        Vec::<(u32, String)>::deserialize(d)?
            .into_iter()
            .map(|(i, c)| c.parse().map(|c| (i, c)).map_err(D::Error::custom))
            .collect()
    }
}

/// Largest `n` whose counts fit in `u128`.
pub const MAX_TERMS_N: u32 = 80;

pub fn decomposition_terms(n: u32) -> Result<DecompositionTerms, CartierError> {
    if n > MAX_TERMS_N {
        return Err(CartierError::InvariantViolation(format!(
            "n = {} exceeds {}",
            n, MAX_TERMS_N
        )));
    }
    let mut n_terms = Vec::with_capacity(n as usize);
    let mut binom: u128 = 1;
    for i in 1..=n {
        binom = binom * (n - i + 1) as u128 / i as u128;
        n_terms.push((i, binom << i));
    }
    Ok(DecompositionTerms {
        n,
        i_terms: 1,
        l_terms: n as u128,
        n_terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerVerdict {
    pub pass: bool,
    pub ranks: (u64, u64, u64),
    pub reason: Option<String>,
}

/// For `A ⊂ B ⊂ C`, left exactness of `0 -> LI(A,B) -> LI(A,C) -> LI(B,C)`
/// forces `r(A,B) <= r(A,C) <= r(A,B) + r(B,C)`.
pub fn tower_check(ab: &LIResult, ac: &LIResult, bc: &LIResult) -> Result<TowerVerdict, CartierError> {
    let get = |r: &LIResult, what: &str| {
        r.certified_rank().ok_or_else(|| {
            CartierError::InvariantViolation(format!("rank of {} is not certified", what))
        })
    };
    Ok(tower_ranks(get(ab, "(A,B)")?, get(ac, "(A,C)")?, get(bc, "(B,C)")?))
}

pub(crate) fn tower_ranks(ab: u64, ac: u64, bc: u64) -> TowerVerdict {
    let reason = if ab > ac {
        Some(format!("r(A,B) = {} exceeds r(A,C) = {}", ab, ac))
    } else if ac > ab + bc {
        Some(format!("r(A,C) = {} exceeds r(A,B) + r(B,C) = {}", ac, ab + bc))
    } else {
        None
    };
    TowerVerdict {
        pass: reason.is_none(),
        ranks: (ab, ac, bc),
        reason,
    }
}

/// LI of a product of extensions is the product of the factors.
pub fn product_rank(results: &[LIResult]) -> Result<LIResult, CartierError> {
    let mut ranks = Vec::with_capacity(results.len());
    for (i, r) in results.iter().enumerate() {
        ranks.push(r.certified_rank().ok_or_else(|| {
            CartierError::InvariantViolation(format!("rank of factor {} is not certified", i))
        })?);
    }
    Ok(LIResult {
        rank: Rank::Known(ranks.iter().sum()),
        method: None,
        certified: true,
        certificate: Certificate::Product { ranks },
        hints_consumed: Vec::new(),
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::LIMethod;
    use super::*;

    fn binomial(n: u32, k: u32) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }

    #[test]
    fn term_counts() {
        let one = decomposition_terms(1).unwrap();
        assert_eq!((one.i_terms, one.l_terms, one.n_terms.clone()), (1, 1, vec![(1, 2)]));
        let two = decomposition_terms(2).unwrap();
        assert_eq!(two.n_terms, vec![(1, 4), (2, 4)]);
        assert!(decomposition_terms(0).unwrap().n_terms.is_empty());
        for n in 0..=MAX_TERMS_N {
            let d = decomposition_terms(n).unwrap();
            let total: u128 = d.n_terms.iter().map(|t| t.1).sum();
            assert_eq!(total + 1, 3u128.pow(n));
            for &(i, c) in &d.n_terms {
                assert_eq!(c, binomial(n, i) << i);
            }
        }
        assert!(decomposition_terms(MAX_TERMS_N + 1).is_err());
    }

    #[test]
    fn towers() {
        assert!(tower_ranks(0, 1, 1).pass);
        assert!(tower_ranks(1, 1, 0).pass);
        assert!(!tower_ranks(1, 0, 5).pass);
        assert!(!tower_ranks(0, 3, 1).pass);
    }

    #[test]
    fn products() {
        let r = |k| LIResult::known(LIMethod::FiveTermSequence, k, Certificate::None);
        assert_eq!(product_rank(&[r(1), r(0)]).unwrap().rank, Rank::Known(1));
        assert_eq!(product_rank(&[]).unwrap().rank, Rank::Known(0));
        assert_eq!(product_rank(&[r(1), r(1), r(2)]).unwrap().rank, Rank::Known(4));
    }
}
