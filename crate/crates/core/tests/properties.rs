mod common;

use common::{corpus, ints, small, vd, Oracle};
use hfcore::corpus::{build, CorpusName};
use hfcore::diagram::{
    connected_sum, permute_curves, reverse_curve, stabilize, CurveKind, HeegaardDiagram, ValidatedDiagram,
};
use hfcore::domains::{Domain, DomainError, DomainSolver};
use hfcore::exactla::{int, rat_from_int, HermiteSystem, Int, IntMatrix};
use hfcore::floer::{complexes, homology, FloerOptions};
use hfcore::generators::enumerate_generators;
use hfcore::measures::{embedded_euler_char, euler_measure, maslov_index, point_measure};
use hfcore::spinc::spinc_classes;
use num_traits::Zero;
use proptest::prelude::*;

fn admissible() -> Vec<CorpusName> {
    corpus()
        .into_iter()
        .filter(|n| !matches!(n, CorpusName::S1S2Bad | CorpusName::S1S2Wind))
        .collect()
}

fn any_corpus() -> impl Strategy<Value = CorpusName> {
    proptest::sample::select(corpus())
}

fn any_admissible() -> impl Strategy<Value = CorpusName> {
    proptest::sample::select(admissible())
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..=4, n)
}

fn shape(d: &HeegaardDiagram) -> Vec<(u64, Vec<(i64, usize)>)> {
    let h = homology(&ValidatedDiagram::new(d.clone()).unwrap()).unwrap();
    let mut v: Vec<_> = h
        .classes
        .iter()
        .map(|c| (c.divisor, c.ranks.clone().into_iter().collect()))
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn measures_are_additive((name, a, b) in with_vectors()) {
        let d = vd(name);
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let oracle = Oracle::new(&d);
        let small_a = a.clone();
        let (a, b, sum) = (ints(&a), ints(&b), ints(&sum));
        prop_assert_eq!(euler_measure(&d, &sum), euler_measure(&d, &a) + euler_measure(&d, &b));
        for p in 0..d.num_points() {
            prop_assert_eq!(point_measure(&d, &sum, p), point_measure(&d, &a, p) + point_measure(&d, &b, p));
            let o = oracle.point(&small_a, p);
            prop_assert_eq!(point_measure(&d, &a, p), rat_from_int(&int(*o.numer())) / rat_from_int(&int(*o.denom())));
        }
    }

    #[test]
    fn connecting_domains_and_sigma(name in any_corpus(), i in any::<usize>(), j in any::<usize>(), k in -3i64..=3) {
        let d = vd(name);
        let solver = DomainSolver::new(&d);
        let gens = enumerate_generators(&d);
        let (x, y) = (&gens[i % gens.len()], &gens[j % gens.len()]);
        let forward = solver.connecting_domain(x, y);
        let back = solver.connecting_domain(y, x);
        prop_assert_eq!(forward.is_some(), back.is_some());
        if let (Some(f), Some(b)) = (forward, back) {
            prop_assert!(solver.check(&f) && solver.check(&b));
            let loop_ = f.compose(&b).unwrap();
            // the round trip is periodic
            let oracle = Oracle::new(&d);
            prop_assert!(oracle.is_domain(&small(loop_.coefficients()), x, x));
            prop_assert!(loop_.nz(&d).is_zero());
            let ind = maslov_index(&d, &f).unwrap();
            prop_assert_eq!(maslov_index(&d, &f.plus_sigma(k)).unwrap(), ind + int(2 * k));
        }
    }

    #[test]
    fn lattice_spans_periodic_kernel(name in any_corpus(), t in proptest::collection::vec(-3i64..=3, 4)) {
        let d = vd(name);
        let solver = DomainSolver::new(&d);
        let lattice = solver.periodic_lattice();
        prop_assert_eq!(lattice.rank() + 1, solver.kernel_rank());
        let p = lattice.combine(&ints(&t[..lattice.rank()]));
        let x = enumerate_generators(&d).remove(0);
        prop_assert!(solver.check(&Domain::new(p.clone(), x.clone(), x.clone())));
        prop_assert!(p[d.basepoint_region()].is_zero());
    }

    #[test]
    fn permuting_and_reversing_curves_keeps_homology(name in any_admissible(), seed in any::<u64>()) {
        let d = build(name).unwrap();
        let g = d.genus();
        let mut alpha: Vec<usize> = (0..g).collect();
        let mut beta: Vec<usize> = (0..g).collect();
        alpha.rotate_left((seed % g as u64) as usize);
        beta.rotate_left(((seed >> 8) % g as u64) as usize);
        if seed & 1 == 1 {
            beta.reverse();
        }
        let permuted = permute_curves(&d, &alpha, &beta);
        let kind = if seed & 2 == 0 { CurveKind::Alpha } else { CurveKind::Beta };
        let reversed = reverse_curve(&permuted, kind, ((seed >> 16) % g as u64) as usize);
        prop_assert_eq!(shape(&reversed), shape(&d));
    }
}

fn with_vectors() -> impl Strategy<Value = (CorpusName, Vec<i64>, Vec<i64>)> {
    any_corpus().prop_flat_map(|name| {
        let f = build(name).unwrap().num_regions();
        (Just(name), coeffs(f), coeffs(f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_solves_what_it_can(rows in 1usize..4, cols in 1usize..5, entries in proptest::collection::vec(-5i64..=5, 16), x in proptest::collection::vec(-5i64..=5, 4)) {
        let m: Vec<Vec<Int>> = (0..rows).map(|r| ints(&entries[r * cols..(r + 1) * cols])).collect();
        let a = IntMatrix::from_rows(&m);
        let b = a.mul_vec(&ints(&x[..cols]));
        let sys = HermiteSystem::new(&a);
        let sol = sys.solve(&b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&sol), b);
        for k in sys.kernel() {
            prop_assert!(a.mul_vec(k).iter().all(|c| c.is_zero()));
        }
    }
}

#[test]
fn counted_domains_are_rigid_disks() {
    for name in admissible() {
        let d = vd(name);
        let solver = DomainSolver::new(&d);
        for c in complexes(&d, FloerOptions::default()).unwrap() {
            for counted in &c.audit {
                let dom = &counted.domain;
                assert_eq!(maslov_index(&d, dom).unwrap(), int(1), "{name}");
                assert!(dom.nz(&d).is_zero(), "{name}");
                // the source is the disk plus one trivial strip per fixed point
                let moving = dom.from().points().iter().filter(|&&p| !dom.to().contains(p)).count();
                let chi = counted.shape.euler_characteristic.unwrap() + (d.genus() - moving) as i64;
                assert_eq!(counted.shape.euler_characteristic, Some(1), "{name}");
                assert_eq!(embedded_euler_char(&d, dom).unwrap(), int(chi), "{name}");
                assert!(solver.check(dom));
                let (gx, gy) = (c.class.grading(dom.from()).unwrap(), c.class.grading(dom.to()).unwrap());
                assert_eq!(c.class.reduce(gx - gy - 1), 0, "{name}: {gx} -> {gy}");
            }
        }
    }
}

#[test]
fn weakly_admissible_means_bounded() {
    for name in corpus() {
        let d = vd(name);
        let solver = DomainSolver::new(&d);
        let weak = hfcore::admissibility::weak_admissible(&d, None).admissible;
        let gens = enumerate_generators(&d);
        for x in &gens {
            for y in &gens {
                let r = solver.positive_domains(x, y, 1, 0);
                assert_eq!(weak, !matches!(r, Err(DomainError::Unbounded { .. })), "{name}");
            }
        }
    }
}

#[test]
fn classes_partition_generators() {
    for name in corpus() {
        let d = vd(name);
        let solver = DomainSolver::new(&d);
        let classes = spinc_classes(&solver);
        let mut all: Vec<_> = classes.iter().flat_map(|c| c.members.clone()).collect();
        all.sort();
        assert_eq!(all, enumerate_generators(&d), "{name}");
        for c in &classes {
            for x in &c.members {
                assert!(solver.connecting_domain(c.base(), x).is_some());
            }
            for other in &classes {
                if other.base() != c.base() {
                    assert!(solver.connecting_domain(c.base(), other.base()).is_none());
                }
            }
        }
    }
}

#[test]
fn stabilization_and_connected_sum_multiply_ranks() {
    let pieces = [
        CorpusName::S3G1,
        CorpusName::S1S2G1,
        CorpusName::Lens { p: 2, q: 1 },
        CorpusName::Lens { p: 3, q: 2 },
        CorpusName::Lens { p: 5, q: 2 },
    ];
    for a in pieces {
        let da = build(a).unwrap();
        let ta: usize = shape(&da).iter().flat_map(|c| c.1.iter().map(|r| r.1)).sum();
        assert_eq!(shape(&stabilize(&da)), shape(&da), "{a}");
        for b in pieces {
            let db = build(b).unwrap();
            let tb: usize = shape(&db).iter().flat_map(|c| c.1.iter().map(|r| r.1)).sum();
            let sum = homology(&ValidatedDiagram::new(connected_sum(&da, &db)).unwrap()).unwrap();
            assert_eq!(sum.total(), ta * tb, "{a} # {b}");
        }
    }
}

#[test]
fn hfd_round_trip() {
    for name in corpus() {
        let d = build(name).unwrap();
        let back = HeegaardDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d, "{name}");
    }
}
