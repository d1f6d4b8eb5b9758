//! Property tests: exterior-algebra laws, structure operators, and literal
//! round-trips, in exact arithmetic over randomized small-integer inputs.

use num::BigRational;
use proptest::prelude::*;

use su3torsion::exterior::{degree_masks, mask_indices, KForm};
use su3torsion::scalar::Scalar;
use su3torsion::structfile::{parse_structure_text, NILMANIFOLD_FIXTURE};
use su3torsion::su3::{induced_structure, standard_kappa, standard_omega, SU3Structure};

type Q = BigRational;

fn form_from(degree: usize, coeffs: &[i64]) -> KForm<Q> {
    let mut out = KForm::zero(degree as u8);
    for (mask, c) in degree_masks(degree).into_iter().zip(coeffs) {
        if *c != 0 {
            out.set_coeff(&mask_indices(mask), Q::from_int(*c));
        }
    }
    out
}

fn standard() -> SU3Structure<Q> {
    induced_structure(&standard_kappa::<Q>(), &standard_omega::<Q>(), false, 0.0)
        .expect("standard structure")
}

fn sign(p: usize, q: usize) -> Q {
    if (p * q) % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// α∧β = (−1)^{pq} β∧α for (p,q) ∈ {(1,2),(2,2),(2,3),(3,3),(1,3)}.
    #[test]
    fn wedge_is_graded_commutative(
        a1 in prop::array::uniform6(-4i64..=4),
        b2 in prop::array::uniform15(-4i64..=4),
        c3 in prop::array::uniform20(-4i64..=4),
    ) {
        let one = form_from(1, &a1);
        let two = form_from(2, &b2);
        let three = form_from(3, &c3);
        let pairs: [(&KForm<Q>, &KForm<Q>); 5] = [
            (&one, &two),
            (&two, &two),
            (&two, &three),
            (&three, &three),
            (&one, &three),
        ];
        for (x, y) in pairs {
            let lhs = x.wedge(y);
            let rhs = y.wedge(x).scale(&sign(x.degree(), y.degree()));
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// (α∧β)∧γ = α∧(β∧γ) for degrees 1+2+3.
    #[test]
    fn wedge_is_associative(
        a1 in prop::array::uniform6(-4i64..=4),
        b2 in prop::array::uniform15(-4i64..=4),
        c3 in prop::array::uniform20(-4i64..=4),
    ) {
        let one = form_from(1, &a1);
        let two = form_from(2, &b2);
        let three = form_from(3, &c3);
        prop_assert_eq!(
            one.wedge(&two).wedge(&three),
            one.wedge(&two.wedge(&three))
        );
    }

    /// Hodge star: ** = (−1)^{p(6−p)} (so −1 on odd degrees, +1 on even).
    #[test]
    fn hodge_star_squares_to_degree_sign(
        b2 in prop::array::uniform15(-4i64..=4),
        c3 in prop::array::uniform20(-4i64..=4),
    ) {
        let s = standard();
        let two = form_from(2, &b2);
        let three = form_from(3, &c3);
        prop_assert_eq!(s.hodge_star(&s.hodge_star(&two)), two.clone());
        prop_assert_eq!(
            s.hodge_star(&s.hodge_star(&three)),
            three.scale(&-Q::one())
        );
    }

    /// J acts as an involution on 2-forms and squares to −1 on 3-forms.
    #[test]
    fn j_action_squares_correctly(
        b2 in prop::array::uniform15(-4i64..=4),
        c3 in prop::array::uniform20(-4i64..=4),
    ) {
        let s = standard();
        let two = form_from(2, &b2);
        let three = form_from(3, &c3);
        prop_assert_eq!(s.j_act(&s.j_act(&two)), two.clone());
        prop_assert_eq!(s.j_act(&s.j_act(&three)), three.scale(&-Q::one()));
    }

    /// The pairing is symmetric and positive definite on 2-forms.
    #[test]
    fn pairing_is_symmetric_and_definite(
        b2 in prop::array::uniform15(-4i64..=4),
        c2 in prop::array::uniform15(-4i64..=4),
    ) {
        let s = standard();
        let x = form_from(2, &b2);
        let y = form_from(2, &c2);
        prop_assert_eq!(s.pair(&x, &y), s.pair(&y, &x));
        let nx = s.norm_sq(&x);
        prop_assert!(nx.to_f64() >= 0.0);
        prop_assert_eq!(nx.is_zero(), x.is_zero());
    }

    /// Rational literals survive the emit/parse round trip exactly.
    #[test]
    fn rational_literal_round_trips(n in -1_000_000i64..=1_000_000, d in 1i64..=1_000_000) {
        let x = Q::from_ratio(n, d);
        let parsed = Q::parse_literal(&x.literal()).expect("literal parses");
        prop_assert_eq!(parsed, x);
    }

    /// Decimal and scientific literals parse to the exact rational they denote.
    #[test]
    fn decimal_literal_parses_exactly(int_part in -999i64..=999, frac in 0u32..=9999, exp in -6i32..=6) {
        let text = format!("{int_part}.{frac:04}e{exp}");
        let parsed = Q::parse_literal(&text).expect("decimal parses");
        let sign = if int_part < 0 { -Q::one() } else { Q::one() };
        let base = Q::from_int(int_part.abs()) + Q::from_ratio(frac as i64, 10_000);
        let ten = Q::from_int(10);
        let mut scale = Q::one();
        for _ in 0..exp.unsigned_abs() {
            scale = scale * ten.clone();
        }
        let expected = if exp >= 0 {
            sign * base * scale
        } else {
            sign * base / scale
        };
        prop_assert_eq!(parsed, expected);
    }
}

#[test]
fn structure_file_round_trips_through_json() {
    let file = parse_structure_text(NILMANIFOLD_FIXTURE).expect("fixture parses");
    let emitted = serde_json::to_string_pretty(&file).expect("serializes");
    let reparsed = parse_structure_text(&emitted).expect("reparses");
    assert_eq!(reparsed, file);
}
