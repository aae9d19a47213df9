mod common;

use std::sync::Arc;

use cartierlab::artinian::{component_count, quotient_algebra};
use cartierlab::cartier::{
    decomposition_terms, product_rank, tower_check, Certificate, LIMethod, LIResult, Rank,
};
use cartierlab::cli::report::{Analysis, Report};
use cartierlab::laurent::{bass_decompose, is_laurent_unit, LaurentElement};
use cartierlab::polycore::{
    groebner_basis, Field, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial,
};
use common::*;
use proptest::prelude::*;

type Terms = Vec<(Vec<u32>, i64)>;

fn poly_strategy(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 1..=max_terms)
}

fn build(ring: &Arc<PolyRing>, terms: &Terms) -> Polynomial {
    let f = ring.field();
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exps(e), f.from_int(*c)))
            .collect(),
    )
}

fn field_of(modular: bool) -> Field {
    if modular {
        Field::prime(7).unwrap()
    } else {
        Field::rationals()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn groebner_bases_pass_the_oracle(
        modular in any::<bool>(),
        nvars in 2usize..=3,
        gens in prop::collection::vec(poly_strategy(3, 2, 3), 1..=3),
    ) {
        let names = ["x", "y", "z"];
        let ring = PolyRing::with_budget(field_of(modular), &names[..nvars], MonomialOrder::Grevlex, 50_000).unwrap();
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|t| {
                let trimmed: Terms = t.iter().map(|(e, c)| (e[..nvars].to_vec(), *c)).collect();
                build(&ring, &trimmed)
            })
            .collect();
        match groebner_basis(&ring, &polys) {
            Ok(basis) => prop_assert_eq!(check_groebner(&polys, &basis), Ok(())),
            Err(e) => prop_assert!(e.is_resource_limit(), "unexpected error {}", e),
        }
    }

    #[test]
    fn idempotent_counts_match_enumeration(
        f in prop::collection::vec(0u64..5, 1..=4),
        g in prop::collection::vec(0u64..5, 1..=2),
    ) {
        let mut f = f;
        f.push(1);
        let mut g = g;
        g.push(1);
        prop_assume!((f.len() - 1) * (g.len() - 1) <= 4);
        let ring = PolyRing::new(Field::prime(5).unwrap(), &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let ideal = Ideal::parse(&ring, &[uni_text(&f, "x"), uni_text(&g, "y")]).unwrap();
        let alg = quotient_algebra(&ideal).unwrap();
        let expected = components_from_idempotents(count_idempotents_tensor(&f, &g, 5));
        prop_assert_eq!(component_count(&alg).unwrap(), expected);
    }

    #[test]
    fn bass_round_trip_and_additivity(
        which in 0usize..3,
        a in unit_strategy(),
        b in unit_strategy(),
    ) {
        let base = &bases()[which];
        let x = base.unit(&a);
        let y = base.unit(&b);
        let xy = x.mul(&y);
        for (u, spec) in [(&x, Some(&a)), (&y, Some(&b)), (&xy, None)] {
            prop_assert!(is_laurent_unit(u).unwrap());
            let d = bass_decompose(u).unwrap();
            prop_assert_eq!(&d.recompose(), u);
            check_parts(&base.alg, &d.p_part, 1);
            check_parts(&base.alg, &d.q_part, -1);
            if let Some(spec) = spec {
                for (e, n) in d.idempotents.iter().zip(&d.exponents) {
                    let i = base.idempotents.iter().position(|f| f == e).expect("known idempotent");
                    prop_assert_eq!(*n, spec.exponents[i]);
                }
            }
        }
        let (dx, dy, dxy) = (bass_decompose(&x).unwrap(), bass_decompose(&y).unwrap(), bass_decompose(&xy).unwrap());
        prop_assert_eq!(&dx.idempotents, &dxy.idempotents);
        prop_assert_eq!(&dy.idempotents, &dxy.idempotents);
        for i in 0..dxy.exponents.len() {
            prop_assert_eq!(dxy.exponents[i], dx.exponents[i] + dy.exponents[i]);
        }
    }

    #[test]
    fn laurent_text_round_trips(which in 0usize..3, a in unit_strategy()) {
        let base = &bases()[which];
        let x = base.unit(&a);
        let back = LaurentElement::parse(&base.alg, "t", &x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn product_rank_is_additive(ranks in prop::collection::vec(0u64..5, 0..5)) {
        let parts: Vec<LIResult> = ranks.iter().map(|r| known(*r)).collect();
        let total = product_rank(&parts).unwrap();
        prop_assert_eq!(total.rank, Rank::Known(ranks.iter().sum()));
    }

    #[test]
    fn tower_check_accepts_exact_sequences(ab in 0u64..4, extra in 0u64..4, bc_extra in 0u64..4) {
        let ac = ab + extra;
        let bc = extra + bc_extra;
        let v = tower_check(&known(ab), &known(ac), &known(bc)).unwrap();
        prop_assert!(v.pass);
        let bad = tower_check(&known(ac + 1), &known(ac), &known(bc)).unwrap();
        prop_assert!(!bad.pass);
    }

    #[test]
    fn term_reports_round_trip(n in 0u32..=80) {
        let mut report = Report::new("terms", 100_000);
        report.results.push(Analysis::Terms { terms: decomposition_terms(n).unwrap() });
        let json = report.to_json();
        let back = Report::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(back, report);
    }
}

fn known(r: u64) -> LIResult {
    LIResult {
        rank: Rank::Known(r),
        method: Some(LIMethod::FiveTermSequence),
        certified: true,
        certificate: Certificate::None,
        hints_consumed: Vec::new(),
        notes: Vec::new(),
    }
}

fn unit_strategy() -> impl Strategy<Value = UnitSpec> {
    let nz = prop_oneof![-3i64..=-1, 1i64..=3];
    (
        prop::collection::vec(nz, 2),
        (-2i64..=2, -2i64..=2),
        prop::collection::vec(-3i64..=3, 2),
        ((-2i64..=2, -2i64..=2), 1i64..=3),
        ((-2i64..=2, -2i64..=2), 1i64..=3),
    )
        .prop_map(|(scalars, nil0, exponents, (nil1, a), (nil2, b))| UnitSpec {
            scalars,
            nil0,
            exponents,
            nil1,
            a,
            nil2,
            b,
        })
}
