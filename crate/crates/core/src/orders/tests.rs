use super::*;
use crate::exact::UnitPoly;
use num_rational::Ratio;

fn poly(t: i64, s: i64) -> UnitPoly {
    UnitPoly::new(t, s)
}

#[test]
fn monogenic_orders() {
    for (t, s, d) in [(0, -1, -23), (5, 2, -279), (1, 0, -31)] {
        let o = order_from_poly(poly(t, s)).unwrap();
        assert_eq!(o.disc, d);
        assert_eq!(o.index(), Ratio::from_integer(1));
        assert!(o.is_valid());
    }
    assert!(order_from_poly(poly(5, 6)).is_err());
}

#[test]
fn maximal_orders() {
    let m = maximal_order(poly(0, -1)).unwrap();
    assert_eq!(m.index(), Ratio::from_integer(1));
    let m = maximal_order(poly(5, 2)).unwrap();
    assert_eq!(m.index(), Ratio::from_integer(3));
    assert_eq!(m.disc, -31);
    assert!(m.is_valid());
    assert_eq!(m.disc * 9, -279);
    let m = maximal_order(poly(1, 0)).unwrap();
    assert_eq!(m.disc, -31);
}

#[test]
fn overorders_of_index_three() {
    let list = overorders(poly(5, 2)).unwrap();
    assert_eq!(list.len(), 2);
    assert_eq!(list[0].index(), Ratio::from_integer(1));
    assert_eq!(list[1].index(), Ratio::from_integer(3));
    assert!(list.iter().all(|o| o.is_valid()));
    assert_eq!(overorders(poly(0, -1)).unwrap().len(), 1);
}

#[test]
fn multiplier_scaling_invariance() {
    let o = order_from_poly(poly(5, 2)).unwrap();
    let f = o.field.clone();
    let m = OLattice::new(o.basis.clone(), o.clone());
    assert_eq!(multiplier_ring(&m), o);
    let x = Elem::gen();
    for lam in [Elem::int(2), Elem::new([1, 0, 0], 3), x, x.sub(&Elem::one())] {
        assert_eq!(multiplier_ring(&m.scaled(&lam)).basis, o.basis);
    }
    let top = maximal_over(&o).unwrap();
    let big = OLattice::new(top.basis.clone(), o.clone());
    let mr = multiplier_ring(&big);
    assert_eq!(mr.basis, top.basis);
    assert!(mr.contains_order(&o) && mr != o);
    let _ = f;
}

#[test]
fn isomorphism_basics() {
    let o = order_from_poly(poly(5, 2)).unwrap();
    let m = OLattice::new(o.basis.clone(), o.clone());
    assert!(is_isomorphic(&m, &m));
    let five = m.scaled(&Elem::int(5));
    let w = isomorphism_witness(&m, &five).unwrap();
    assert_eq!(m.scaled(&w).basis, five.basis);
    let top = maximal_over(&o).unwrap();
    let big = OLattice::new(top.basis.clone(), o.clone());
    assert!(!is_isomorphic(&m, &big));
}

#[test]
fn small_class_numbers() {
    for (t, s) in [(0, -1), (1, 0)] {
        let top = maximal_order(poly(t, s)).unwrap();
        let cl = module_classes(&top).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].representative.basis, top.basis);
        assert_eq!(class_number(&top).unwrap(), (1, 1));
    }
    let o = order_from_poly(poly(5, 2)).unwrap();
    let (total, proper) = class_number(&o).unwrap();
    assert!(total >= 2 && proper >= 1);
}

#[test]
fn two_algorithms_agree_on_small_orders() {
    // Non-maximal monogenic orders: compare enumeration with the conductor count.
    let mut checked = 0;
    for t in -6..=9i64 {
        for s in -6..t {
            let p = poly(t, s);
            if !p.is_admissible() {
                continue;
            }
            let z = order_from_poly(p).unwrap();
            let top = maximal_over(&z).unwrap();
            if top == z {
                continue;
            }
            // Use a fundamental unit of O_F found by a unit search.
            let eps = fundamental_unit(&top);
            let top = top.with_unit(eps);
            let h_top = class_number(&top).unwrap().0;
            for o in orders_between(&z, &top).unwrap() {
                let o = o.with_unit(z.unit);
                let a = class_number(&o).unwrap();
                let b = class_number_via_conductor(&o, &top, h_top).unwrap();
                assert_eq!(a, b, "order {o}");
                checked += 1;
            }
        }
    }
    assert!(checked > 10, "{checked}");
}

/// Unit of O_F with the least positive log-ratio, by direct search.
pub(crate) fn fundamental_unit(top: &CubicOrder) -> Elem {
    let f = &top.field;
    let w = f.log_ratio(&top.unit).abs() + 1e-6;
    let found = search::bounded_norm_elements(f, &top.basis, Ratio::from_integer(1), w);
    found
        .iter()
        .filter(|x| x.abs_norm == Ratio::from_integer(1))
        .map(|x| x.elem)
        .filter(|e| f.log_ratio(e) > 1e-6)
        .min_by(|a, b| f.log_ratio(a).partial_cmp(&f.log_ratio(b)).unwrap())
        .expect("the known unit lies in the window")
}
