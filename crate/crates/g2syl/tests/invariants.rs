//! Structural invariants of the character table, checked from the closed
//! forms alone at field orders too large to enumerate.

use g2syl::chartable::{class_count, closed_form, conjugate_by_formula, ClassRep, ConjShape, IrrId};
use g2syl::{Coords, Cyclo, Field, G2Syl};
use proptest::prelude::*;

const ORDERS: [u64; 4] = [5, 7, 11, 25];

fn coords(field: &Field, v: [u32; 6]) -> Coords<'_> {
    v.map(|x| field.elem(x % field.q()).unwrap())
}

fn pairing(field: &Field, a: IrrId, b: IrrId) -> Cyclo {
    let q = field.q();
    let mut acc = Cyclo::zero(field.p());
    for rep in ClassRep::all(q) {
        let term = &closed_form(field, a, rep) * &closed_form(field, b, rep).conj();
        acc += &(&term * &Cyclo::from_int(field.p(), rep.class_size(q as u64) as i64));
    }
    acc
}

#[test]
fn counts_match_at_larger_q() {
    for q in [11u64, 13, 25, 49] {
        let field = Field::with_order(q).unwrap();
        let reps = ClassRep::all(field.q());
        let ids = IrrId::all(field.q());
        assert_eq!(reps.len() as u64, class_count(q));
        assert_eq!(ids.len(), reps.len());
        assert_eq!(reps.iter().map(|r| r.class_size(q)).sum::<u64>(), q.pow(6));
        assert_eq!(ids.iter().map(|i| i.degree(q).pow(2)).sum::<u64>(), q.pow(6));
        for rep in &reps {
            assert_eq!(ClassRep::recognise(&rep.coords(&field)), Some(*rep));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_formulas_match_group_law(
        qi in 0..ORDERS.len(),
        shape in 0..ConjShape::ALL.len(),
        t in any::<[u32; 6]>(),
        r in any::<[u32; 6]>(),
    ) {
        let field = Field::with_order(ORDERS[qi]).unwrap();
        let group = G2Syl::new(&field);
        let shape = ConjShape::ALL[shape];
        let t = shape.element(&coords(&field, t));
        let u = coords(&field, r);
        let direct = group.conj_coords(&u, &group.inv_coords(&u), &t);
        prop_assert_eq!(conjugate_by_formula(shape, &t, &u), direct);
    }

    #[test]
    fn identity_value_is_degree_and_values_are_bounded(qi in 0..ORDERS.len(), i in any::<prop::sample::Index>()) {
        let field = Field::with_order(ORDERS[qi]).unwrap();
        let q = field.q();
        let ids = IrrId::all(q);
        let id = ids[i.index(ids.len())];
        let deg = id.degree(q as u64);
        prop_assert_eq!(closed_form(&field, id, ClassRep::Identity), Cyclo::from_int(field.p(), deg as i64));
        for rep in ClassRep::all(q).into_iter().step_by(7) {
            let (re, im) = closed_form(&field, id, rep).to_complex();
            prop_assert!((re * re + im * im).sqrt() <= deg as f64 + 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rows_are_orthonormal_at_q11_and_q25(
        big in any::<bool>(),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let field = Field::with_order(if big { 25 } else { 11 }).unwrap();
        let ids = IrrId::all(field.q());
        let (a, b) = (ids[i.index(ids.len())], ids[j.index(ids.len())]);
        let expected = if a == b { (field.q() as i64).pow(6) } else { 0 };
        prop_assert_eq!(pairing(&field, a, b), Cyclo::from_int(field.p(), expected));
    }
}
