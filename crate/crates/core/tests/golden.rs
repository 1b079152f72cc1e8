//! Pinned values. Small cases are also recomputed by the brute-force oracle in
//! `common`.

mod common;

use colorlie::algebra::*;
use colorlie::alt::find_alternating_nonidentity;
use colorlie::codim::*;
use colorlie::error::Error;
use colorlie::group::*;
use colorlie::poly::MonomialShape;
use colorlie::rank::Certificate;
use colorlie::sym::{hook_dim, rectangle_bound, Partition};

fn l() -> GradedAlgebra {
    tensor_color_construct(&sl2_factory(), canonical_cocycle().table()).unwrap()
}

fn values(f: impl Fn(usize) -> CodimReport, range: std::ops::RangeInclusive<usize>) -> Vec<u128> {
    range.map(|n| f(n).value).collect()
}

#[test]
fn sl2_codimensions() {
    let s = sl2_factory();
    let o = CodimOptions::exact();
    assert_eq!(values(|n| codim_plain(&s, n, &o).unwrap(), 1..=5), [1, 1, 2, 6, 14]);
    assert_eq!(values(|n| codim_lie(&s, n, &o).unwrap(), 1..=7), [1, 1, 2, 6, 14, 36, 90]);
    for n in 1..=4 {
        assert_eq!(common::codim(&s, n, false), [1, 1, 2, 6][n - 1]);
    }
    assert_eq!(common::codim(&s, 5, true), 14);
}

#[test]
#[ignore = "about 25 s in release"]
fn sl2_lie_codimension_8() {
    let r = codim_lie(&sl2_factory(), 8, &CodimOptions::exact()).unwrap();
    assert_eq!(r.value, 232);
}

#[test]
fn l_codimensions() {
    let l = l();
    let o = CodimOptions::exact();
    assert_eq!(values(|n| codim_plain(&l, n, &o).unwrap(), 1..=4), [1, 2, 12, 120]);
    for n in 1..=3 {
        assert_eq!(common::codim(&l, n, false), [1, 2, 12][n - 1]);
    }
    let r4 = codim_plain(&l, 4, &o).unwrap();
    assert_eq!(r4.rows, 120);
    assert_eq!(r4.certificate, Some(Certificate::FullRank));
    assert_eq!(r4.status, Status::Exact);
}

#[test]
fn l_codimension_5_randomized() {
    let r = codim_plain(&l(), 5, &CodimOptions::randomized(1)).unwrap();
    assert_eq!(r.rows, 1680);
    assert_eq!(r.status, Status::LowerBoundWhp);
    assert_eq!(r.value, 1273);
    assert_eq!(r.seeds, vec![1, 2, 3]);
}

#[test]
fn l_exact_codimension_6_hits_size_guard() {
    match codim_plain(&l(), 6, &CodimOptions::exact()) {
        Err(Error::SizeGuard { .. }) => {}
        other => panic!("expected a size guard, got {other:?}"),
    }
    let auto = CodimOptions {
        mode: CodimMode::Auto,
        ..CodimOptions::exact()
    };
    // within the guards Auto is exact
    assert_eq!(codim_plain(&l(), 3, &auto).unwrap().status, Status::Exact);
}

#[test]
fn graded_codimensions() {
    let l = l();
    let o = CodimOptions::exact();
    assert_eq!(values(|n| codim_graded_total(&l, n, &o).unwrap(), 1..=4), [4, 16, 128, 1536]);
    let c = codim_graded_component(&l, [1, 1, 1, 0], MonomialShape::AllBracketings, &o).unwrap();
    assert_eq!(c.value, 2);
    assert_eq!(common::graded_component(&l, [1, 1, 1, 0]), 2);
}

#[test]
fn trivial_cocycle_codimensions() {
    let triv = tensor_color_construct(&sl2_factory(), trivial_cocycle().table()).unwrap();
    let o = CodimOptions::exact();
    assert_eq!(values(|n| codim_plain(&triv, n, &o).unwrap(), 1..=4), [1, 1, 2, 6]);
}

#[test]
fn trend_rows() {
    let t = exponent_trend(&sl2_factory(), 6, &CodimOptions::exact()).unwrap();
    assert_eq!(t.rows_shape, MonomialShape::LeftNormedFirstFixed);
    let vals: Vec<u128> = t.rows.iter().map(|r| r.value).collect();
    assert_eq!(vals, [1, 1, 2, 6, 14, 36]);
    assert_eq!(t.rows[2].root, 1.25992104989);
    assert_eq!(t.rows[4].ratio, Some(2.57142857143));
    assert_eq!(t.rows[5].ratio, None);
    assert!(t.rows.iter().all(|r| root_within_bound(r, 3)));
}

#[test]
fn killing_determinants() {
    assert_eq!(killing_matrix(&sl2_factory()).determinant(), colorlie::linalg::qi(-128));
    let det = killing_matrix(&l()).determinant();
    assert_eq!(det, colorlie::linalg::qi(-(1i64 << 52)));
}

#[test]
fn literal_table_violation_count() {
    let lit = tensor_color_construct(&sl2_factory(), &literal_sign_table()).unwrap();
    assert_eq!(check_color_axioms(&lit, &Bicharacter::canonical()).violation_count(), 564);
}

#[test]
fn hook_dimensions() {
    let sq = Partition::rectangle(3, 3);
    assert_eq!(hook_dim(&sq), 42u32.into());
    assert_eq!(common::count_standard_tableaux(sq.parts()), 42);
    let r = rectangle_bound(3, 1).unwrap();
    assert_eq!((r.n, r.hook_dim.clone()), (9, 42u32.into()));
    assert!(r.holds);
}

#[test]
fn witness_search_is_reproducible() {
    let w = find_alternating_nonidentity(&sl2_factory(), 200, 1).unwrap();
    assert_eq!(w.trial, 0);
    assert_eq!(w.blocks, [1, 2, 1, 2]);
    assert_eq!(w.monomial.to_string(), "(1 2 3 4 5 6 7 8 9)");
    assert_eq!(w.alternating, [2, 5, 7]);
    let v: Vec<String> = w.value.iter().map(colorlie::linalg::format_rational).collect();
    assert_eq!(v, ["-221184", "-442368", "442368"]);
}
