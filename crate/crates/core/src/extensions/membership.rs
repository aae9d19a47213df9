use serde::{Deserialize, Serialize};

use super::{ExtensionError, ExtensionPresentation};
use crate::polycore::{Polynomial, PolyError};

#[derive(Clone, Debug)]
pub struct SubalgebraMembership {
    pub element: Polynomial,
    pub member: bool,
    /// An A-element mapping to `element`, reduced modulo the ideal of A.
    pub preimage: Option<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCheck {
    Witness,
    NotWitness,
}

impl ExtensionPresentation {
    /// Normal form of `b` against the tag basis, in the tag ring.
    pub(crate) fn tag_normal_form(&self, b: &Polynomial) -> Result<Polynomial, PolyError> {
        self.tag.ideal.normal_form(&self.tag.lift_b(b))
    }

    /// The part of the tag normal form that involves B variables. It is
    /// k-linear in `b` and vanishes exactly on A.
    pub(crate) fn residue(&self, b: &Polynomial) -> Result<Polynomial, PolyError> {
        let nf = self.tag_normal_form(b)?;
        let nb = self.tag.nb;
        let terms = nf
            .terms()
            .iter()
            .filter(|(m, _)| m.exps()[..nb].iter().any(|&e| e > 0))
            .cloned()
            .collect();
        Ok(Polynomial::from_terms(&self.tag.ring, terms))
    }

    /// Subalgebra membership by tag-variable elimination.
    pub fn contains(&self, b: &Polynomial) -> Result<SubalgebraMembership, ExtensionError> {
        let nf = self.tag_normal_form(b)?;
        let nb = self.tag.nb;
        let member = nf.support()[..nb].iter().all(|u| !u);
        let preimage = if member {
            let a_ring = self.a_ring();
            let back: Vec<usize> = (0..nb).map(|_| 0).chain(0..a_ring.nvars()).collect();
            let p = nf.rename_into(a_ring, &back);
            Some(self.a.ideal.normal_form(&p)?)
        } else {
            None
        };
        Ok(SubalgebraMembership {
            element: b.clone(),
            member,
            preimage,
        })
    }

    pub(crate) fn member(&self, b: &Polynomial) -> Result<bool, ExtensionError> {
        Ok(self.residue(b)?.is_zero())
    }
}

/// `b^2, b^3 ∈ A` and `b ∉ A`.
pub fn is_seminormal_witness(
    ext: &ExtensionPresentation,
    b: &Polynomial,
) -> Result<WitnessCheck, ExtensionError> {
    let b2 = b.mul(b);
    let b3 = b2.mul(b);
    let w = ext.member(&b2)? && ext.member(&b3)? && !ext.member(b)?;
    Ok(if w {
        WitnessCheck::Witness
    } else {
        WitnessCheck::NotWitness
    })
}

/// `b^2 - b, b^3 - b^2 ∈ A` and `b ∉ A`.
pub fn is_anodal_witness(
    ext: &ExtensionPresentation,
    b: &Polynomial,
) -> Result<WitnessCheck, ExtensionError> {
    let b2 = b.mul(b);
    let b3 = b2.mul(b);
    let w = ext.member(&b2.sub(b))? && ext.member(&b3.sub(&b2))? && !ext.member(b)?;
    Ok(if w {
        WitnessCheck::Witness
    } else {
        WitnessCheck::NotWitness
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn node_membership() {
        let e = node();
        let t = b_poly(&e, "t");
        assert!(!e.contains(&t).unwrap().member);
        let m = e.contains(&b_poly(&e, "t^4 - 2*t^2")).unwrap();
        assert!(m.member);
        let pre = m.preimage.unwrap();
        assert_eq!(pre, a_poly(&e, "x^2 - 1"));
        assert_eq!(e.map_to_b(&pre), b_poly(&e, "t^4 - 2*t^2"));
        let y = e.contains(&b_poly(&e, "t^3 - t")).unwrap();
        assert_eq!(y.preimage.unwrap(), a_poly(&e, "y"));
    }

    #[test]
    fn witnesses() {
        let c = cusp();
        let n = node();
        assert_eq!(
            is_seminormal_witness(&c, &b_poly(&c, "t")).unwrap(),
            WitnessCheck::Witness
        );
        assert_eq!(
            is_seminormal_witness(&n, &b_poly(&n, "t")).unwrap(),
            WitnessCheck::NotWitness
        );
        assert_eq!(
            is_seminormal_witness(&n, &b_poly(&n, "t^2")).unwrap(),
            WitnessCheck::NotWitness
        );
        assert_eq!(
            is_anodal_witness(&n, &b_poly(&n, "t")).unwrap(),
            WitnessCheck::NotWitness
        );
        assert_eq!(
            is_anodal_witness(&n, &b_poly(&n, "1/2*t + 1/2")).unwrap(),
            WitnessCheck::Witness
        );
        let d = ext(&[], &[], &["u"], &["u^2 - u"], &[]);
        assert_eq!(
            is_anodal_witness(&d, &b_poly(&d, "u")).unwrap(),
            WitnessCheck::Witness
        );
    }
}
