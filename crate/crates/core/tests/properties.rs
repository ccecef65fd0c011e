//! Property tests for the algebraic invariants the library relies on.

use proptest::prelude::*;
use weierpatch::branches::{branch_decompose, branch_valuation, NodalLocalRing};
use weierpatch::graphs::{build_abelian_cover, cycle_rank, validate_cover, ReductionGraph};
use weierpatch::invariants::{compute_u_bounds, Characteristic, Engine, FieldDescriptor, TowerStep};
use weierpatch::series::{SeriesTTx, SeriesTx, SeriesXY, TruncPoly};
use weierpatch::weierstrass::prepare_restricted;
use weierpatch::{Error, GroundField, Poly, Precision};

const PREC: Precision = Precision { n_t: 5, n_x: 6, m_x: 6 };

fn field() -> impl Strategy<Value = GroundField> {
    prop_oneof![Just(GroundField::Rationals), Just(GroundField::Prime(7))]
}

fn poly(f: GroundField, len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, len).prop_map(move |cs| Poly::from_i64s(f, &cs))
}

fn series_tx(f: GroundField) -> impl Strategy<Value = SeriesTx> {
    prop::collection::vec(poly(f, 3), PREC.n_t).prop_map(move |ls| SeriesTx::new(f, PREC, ls))
}

/// A unit ≡ 1 mod t.
fn one_mod_t(f: GroundField) -> impl Strategy<Value = SeriesTx> {
    series_tx(f).prop_map(move |s| {
        let mut ls = s.levels().to_vec();
        ls[0] = Poly::one(f);
        SeriesTx::new(f, PREC, ls)
    })
}

fn series_ttx(f: GroundField) -> impl Strategy<Value = SeriesTTx> {
    prop::collection::vec(poly(f, 4), PREC.n_t).prop_map(move |ls| {
        SeriesTTx::new(f, PREC, ls.into_iter().map(|p| TruncPoly::new(p, PREC.n_x)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_tx((a, b, c) in field().prop_flat_map(|f| (series_tx(f), series_tx(f), series_tx(f)))) {
        prop_assert!(a.add(&b).add(&c).eq_at(&a.add(&b.add(&c))));
        prop_assert!(a.mul(&b).mul(&c).eq_at(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).eq_at(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.mul(&b).eq_at(&b.mul(&a)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ring_axioms_ttx((a, b, c) in field().prop_flat_map(|f| (series_ttx(f), series_ttx(f), series_ttx(f)))) {
        prop_assert!(a.mul(&b).mul(&c).eq_at(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).eq_at(&a.mul(&b).add(&a.mul(&c))));
    }

    #[test]
    fn inverse_is_two_sided(u in field().prop_flat_map(one_mod_t)) {
        let v = u.inverse().unwrap();
        let one = SeriesTx::one(u.field(), PREC);
        prop_assert!(u.mul(&v).eq_at(&one));
        prop_assert!(v.mul(&u).eq_at(&one));
    }

    #[test]
    fn roots_power_back((u, n) in (field().prop_flat_map(one_mod_t), prop::sample::select(vec![2u64, 3, 5]))) {
        let r = u.nth_root(n).unwrap();
        prop_assert!(r.pow(n).eq_at(&u));
        prop_assert_eq!(r.precision(), u.precision());
    }

    #[test]
    fn products_never_gain_precision((a, b) in field().prop_flat_map(|f| (series_ttx(f), series_ttx(f)))) {
        let narrow = a.restrict(&Precision { n_t: 3, n_x: 4, m_x: 6 });
        let p = narrow.mul(&b);
        prop_assert!(p.n_t() <= 3);
        prop_assert!(p.levels().iter().all(|l| l.n() <= 4));
    }

    #[test]
    fn restricted_preparation_recomposes(a in field().prop_flat_map(series_tx)) {
        match prepare_restricted(&a) {
            Ok(w) => {
                prop_assert!(w.recompose().eq_at(&a));
                let g = w.g.levels();
                prop_assert_eq!(g[0].degree(), Some(w.degree));
                prop_assert!(g[0].leading().unwrap().is_one());
                prop_assert!(g[1..].iter().all(|l| l.degree().is_none_or(|k| k < w.degree)));
                prop_assert!(w.unit.is_unit());
            }
            Err(e) => prop_assert!(a.is_zero(), "unexpected error {e}"),
        }
    }
}

fn node(f: GroundField) -> NodalLocalRing {
    let prec = Precision::new(1, 12, 8);
    let t = SeriesXY::from_i64_terms(f, prec, &[(0, 2, 1), (2, 0, -1), (3, 0, -1)]);
    NodalLocalRing::new(t).unwrap()
}

/// Low-order elements of k[[x, y]], so valuations stay well inside the
/// known x-precision.
fn small_xy(f: GroundField) -> impl Strategy<Value = SeriesXY> {
    prop::collection::vec(((0usize..3), (0usize..3), -4i64..=4), 1..5).prop_map(move |ts| {
        SeriesXY::from_i64_terms(f, Precision::new(1, 12, 8), &ts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_valuations_add((a, b) in field().prop_flat_map(|f| (small_xy(f), small_xy(f)))) {
        let ring = node(a.field());
        for br in branch_decompose(&ring).unwrap() {
            let (Ok(va), Ok(vb)) = (branch_valuation(&a, &br), branch_valuation(&b, &br)) else {
                continue;
            };
            if va + vb < 8 {
                prop_assert_eq!(branch_valuation(&a.mul(&b), &br).unwrap(), va + vb);
            }
        }
    }

    #[test]
    fn units_do_not_change_valuations((a, u) in field().prop_flat_map(|f| (small_xy(f), small_xy(f)))) {
        let f = a.field();
        let unit = u.add(&SeriesXY::one(f, u.precision()));
        prop_assume!(unit.is_unit());
        let ring = node(f);
        for br in branch_decompose(&ring).unwrap() {
            if let Ok(v) = branch_valuation(&a, &br) {
                if v < 8 {
                    prop_assert_eq!(branch_valuation(&a.mul(&unit), &br).unwrap(), v);
                }
            }
        }
    }
}

/// A connected bipartite graph: a random tree plus extra random edges.
fn bipartite_graph() -> impl Strategy<Value = ReductionGraph> {
    (1usize..5, 1usize..5)
        .prop_flat_map(|(np, nu)| {
            let tree = prop::collection::vec(any::<prop::sample::Index>(), np + nu - 1);
            let extra = prop::collection::vec((0..np, 0..nu), 0..4);
            (Just((np, nu)), tree, extra)
        })
        .prop_map(|((np, nu), tree, extra)| {
            // Each new vertex hangs off an already placed vertex of the
            // other side, so the tree part keeps the graph connected.
            let mut edges: Vec<(usize, usize)> = Vec::new();
            let mut placed_p = vec![0usize];
            let mut placed_u: Vec<usize> = Vec::new();
            let mut next_p = 1;
            let mut next_u = 0;
            for idx in tree {
                if next_u < nu && (placed_u.is_empty() || next_p >= np || next_u <= next_p) {
                    let p = placed_p[idx.index(placed_p.len())];
                    edges.push((p, next_u));
                    placed_u.push(next_u);
                    next_u += 1;
                } else if next_p < np {
                    let u = placed_u[idx.index(placed_u.len())];
                    edges.push((next_p, u));
                    placed_p.push(next_p);
                    next_p += 1;
                }
            }
            for (p, u) in extra {
                if !edges.contains(&(p, u)) {
                    edges.push((p, u));
                }
            }
            let labels = |c: char, n: usize| (0..n).map(|i| format!("{c}{i}")).collect();
            let edges = edges.into_iter().enumerate().map(|(k, (p, u))| (p, u, format!("e{k}"))).collect();
            ReductionGraph::new(labels('P', np), labels('U', nu), edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cycle_rank_is_euler_characteristic(g in bipartite_graph()) {
        let basis = cycle_rank(&g).unwrap();
        prop_assert_eq!(basis.rank + g.vertex_count(), g.edges.len() + 1);
        prop_assert_eq!(basis.chords.len(), basis.rank);
        prop_assert_eq!(basis.spanning_tree.len(), g.vertex_count() - 1);
    }

    #[test]
    fn covers_have_degree_n_to_the_rank((g, n) in (bipartite_graph(), 1u64..4)) {
        let basis = cycle_rank(&g).unwrap();
        let cover = build_abelian_cover(&g, &basis, n).unwrap();
        let r = if n == 1 { 0 } else { basis.rank as u32 };
        prop_assert_eq!(cover.degree(), (n as usize).pow(r));
        prop_assert_eq!(cover.vertices.len(), cover.degree() * g.vertex_count());
        prop_assert_eq!(cover.edges.len(), cover.degree() * g.edges.len());
        let report = validate_cover(&cover);
        prop_assert!(report.star_bijection && report.bipartite);
    }
}

fn towers() -> Vec<FieldDescriptor> {
    let mut out = Vec::new();
    for (base, c) in [
        (TowerStep::AlgClosed, Characteristic::Zero),
        (TowerStep::Finite, Characteristic::Prime(5)),
        (TowerStep::Cd { d: 2 }, Characteristic::Zero),
        (TowerStep::SepClosedAwayFromP, Characteristic::Prime(3)),
        (TowerStep::ExplicitU { u: 2, u_s: 4 }, Characteristic::Zero),
    ] {
        for m in 0..4 {
            for terminal in [None, Some(TowerStep::TwoDimLocal)] {
                out.push(FieldDescriptor::m_local(base.clone(), m, terminal, c).unwrap());
            }
        }
    }
    out
}

#[test]
fn disabling_rules_never_tightens_u_bounds() {
    for d in towers() {
        let full = match compute_u_bounds(&d) {
            Ok(b) => b,
            Err(Error::UnknownBase(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        for rule in weierpatch::invariants::rule_names() {
            let Ok(part) = Engine::new().without(rule).compute_u_bounds(&d) else { continue };
            assert!(part.lower.unwrap_or(0) <= full.lower.unwrap_or(0), "{rule} raised a lower bound");
            assert!(part.upper.unwrap_or(u64::MAX) >= full.upper.unwrap_or(u64::MAX), "{rule} lowered an upper bound");
        }
    }
}
