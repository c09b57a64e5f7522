use std::sync::OnceLock;

use proptest::prelude::*;
use symnorm::homology::{Homologous, HomologyEngine};
use symnorm::l1opt::{Encoding, NormSolver};
use symnorm::rational::q;
use symnorm::symm::{cyclic_tau, enumerate_permutations, Symmetriser};
use symnorm::{corpus, AffineSimplex, Chain, Permutation, SimplicialComplex, Q};

fn complexes() -> &'static [(&'static str, SimplicialComplex)] {
    static CELL: OnceLock<Vec<(&'static str, SimplicialComplex)>> = OnceLock::new();
    CELL.get_or_init(corpus::all)
}

fn sym() -> &'static Symmetriser {
    static CELL: OnceLock<Symmetriser> = OnceLock::new();
    CELL.get_or_init(Symmetriser::default)
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

/// Raw material for a chain: per term a face choice, tuple entries and a
/// coefficient. Resolved against a complex by [`build`].
type Raw = Vec<(usize, Vec<usize>, Q)>;

fn raw(n: usize) -> impl Strategy<Value = Raw> {
    prop::collection::vec(
        (any::<usize>(), prop::collection::vec(any::<usize>(), n + 1), rational()),
        0..6,
    )
}

fn build(k: &SimplicialComplex, n: usize, raw: &Raw) -> Chain {
    let faces: Vec<&[u32]> = k.faces().collect();
    let mut c = Chain::zero(n);
    for (f, picks, coeff) in raw {
        let face = faces[f % faces.len()];
        let t: Vec<u32> = picks.iter().map(|p| face[p % face.len()]).collect();
        c.add_term(AffineSimplex::new(t), coeff.clone());
    }
    c
}

fn fit(raw: Raw, n: usize) -> Raw {
    raw.into_iter()
        .map(|(f, mut p, c)| {
            p.resize(n + 1, 0);
            (f, p, c)
        })
        .collect()
}

fn case() -> impl Strategy<Value = (usize, usize, Raw)> {
    (0..6usize, 0..=4usize).prop_flat_map(|(k, n)| (Just(k), Just(n), raw(n)))
}

/// A cycle: the boundary of a random `(n+1)`-chain.
fn cycle_case() -> impl Strategy<Value = (usize, usize, Raw)> {
    (0..6usize, 1..=3usize).prop_flat_map(|(k, n)| (Just(k), Just(n), raw(n + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_squares_to_zero((k, n, r) in case()) {
        let c = build(&complexes()[k].1, n, &r);
        if n >= 2 {
            prop_assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
        }
    }

    #[test]
    fn simplicial_identities((k, n, r) in case()) {
        let c = build(&complexes()[k].1, n, &r);
        for j in 0..=n {
            for i in 0..j {
                if n >= 2 {
                    let lhs = c.face_map(j).unwrap().face_map(i).unwrap();
                    let rhs = c.face_map(i).unwrap().face_map(j - 1).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norm_is_a_seminorm((k, n, r) in case(), r2 in raw(4), lambda in rational()) {
        let kk = &complexes()[k].1;
        let a = build(kk, n, &r);
        let b = build(kk, n, &fit(r2, n));
        prop_assert!(a.add(&b).unwrap().l1_norm() <= a.l1_norm() + b.l1_norm());
        prop_assert_eq!(a.scale(&lambda).l1_norm(), lambda.abs() * a.l1_norm());
    }

    #[test]
    fn normalised_chains_form_a_subcomplex((k, n, r) in case()) {
        let c = build(&complexes()[k].1, n, &r);
        if n >= 1 && c.is_normalised() {
            prop_assert!(c.face_map(n).unwrap().is_normalised());
            prop_assert!(c.boundary().unwrap().is_normalised());
        }
        let s = sym().symmetrise(&c).unwrap();
        if n >= 1 && s.is_cycle() {
            prop_assert!(s.is_normalised());
        }
    }

    #[test]
    fn symmetrisation_identities((k, n, r) in case()) {
        let c = build(&complexes()[k].1, n, &r);
        let s = sym().symmetrise(&c).unwrap();
        prop_assert!(s.l1_norm() <= c.l1_norm());
        if n >= 1 {
            prop_assert_eq!(s.boundary().unwrap(), sym().symmetrise(&c.boundary().unwrap()).unwrap());
            let d0 = s.face_map(0).unwrap();
            for j in 1..=n {
                let expected = if j % 2 == 0 { d0.clone() } else { d0.neg() };
                prop_assert_eq!(s.face_map(j).unwrap(), expected);
            }
        }
    }

    #[test]
    fn symmetrisation_is_linear((k, n, r) in case(), r2 in raw(4), lambda in rational()) {
        let kk = &complexes()[k].1;
        let a = build(kk, n, &r);
        let b = build(kk, n, &fit(r2, n));
        let lhs = sym().symmetrise(&a.scale(&lambda).add(&b).unwrap()).unwrap();
        let rhs = sym().symmetrise(&a).unwrap().scale(&lambda).add(&sym().symmetrise(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cycles_symmetrise_to_homologous_normalised_cycles((k, n, r) in cycle_case()) {
        let kk = &complexes()[k].1;
        let c = build(kk, n + 1, &r).boundary().unwrap();
        let s = sym().symmetrise(&c).unwrap();
        prop_assert!(s.is_normalised());
        // both sides of the (n+1)·∂_0 expansion vanish
        let expanded = s.face_map(0).unwrap().scale(&Q::from((n + 1) as i64));
        prop_assert_eq!(s.boundary().unwrap(), expanded.clone());
        prop_assert!(expanded.is_zero());
        let h = HomologyEngine::new(kk);
        if let Some(w) = symnorm::homology::cone_witness(kk, &s.sub(&c).unwrap()) {
            prop_assert_eq!(w.boundary().unwrap(), s.sub(&c).unwrap());
        } else if n <= 2 {
            match h.homologous(&s, &c).unwrap() {
                Homologous::Witness(w) => prop_assert_eq!(w.boundary().unwrap(), s.sub(&c).unwrap()),
                Homologous::Refusal { .. } => prop_assert!(false, "refused"),
            }
        }
    }

    #[test]
    fn serialisation_round_trips((k, n, r) in case()) {
        let c = build(&complexes()[k].1, n, &r);
        let back = Chain::from_json(&c.to_json(), Some(n)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn permutation_signs_multiply(n in 0usize..5, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let perms = enumerate_permutations(n, 6).unwrap();
        let p = a.get(&perms);
        let r = b.get(&perms);
        let pr = p.compose(r).unwrap();
        prop_assert_eq!(pr.sign(), p.sign() * r.sign());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(n + 1));
    }
}

#[test]
fn tau_composition_law_by_exhaustion() {
    let k = &complexes()[3].1;
    for n in 1..=4 {
        // every basis tuple up to n = 3, every 97th at n = 4
        let basis = k.basis(n);
        let step = if n == 4 { 97 } else { 1 };
        for t in basis.simplices.iter().step_by(step) {
            for pi in enumerate_permutations(n, 6).unwrap() {
                for j in 0..=n {
                    let lhs = t.permute(&pi).unwrap().face(j).unwrap();
                    let pt = pi.compose(&cyclic_tau(j, n).unwrap()).unwrap();
                    assert_eq!(lhs, t.permute(&pt).unwrap().face(0).unwrap());
                }
            }
        }
    }
}

#[test]
fn basis_size_is_sum_of_surjection_counts() {
    fn surjections(n: usize, k: usize) -> u64 {
        // onto a k-set from an n-set, inclusion-exclusion
        let binom = |a: u64, b: u64| (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1));
        (0..=k as u64)
            .map(|i| {
                let term = binom(k as u64, i) * (k as u64 - i).pow(n as u32);
                if i % 2 == 0 { term as i64 } else { -(term as i64) }
            })
            .sum::<i64>() as u64
    }
    for (_, k) in complexes() {
        for n in 0..=3 {
            let expected: u64 = k.faces().map(|f| surjections(n + 1, f.len())).sum();
            let basis = k.basis(n);
            assert_eq!(basis.len() as u64, expected);
            assert!(basis.simplices.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn boundaries_are_cycles() {
    for (_, k) in complexes() {
        let h = HomologyEngine::new(k);
        for n in 1..=2 {
            for b in h.boundary_space(n).unwrap().vectors {
                assert!(b.is_cycle());
            }
        }
    }
}

#[test]
fn homologous_is_an_equivalence() {
    let k = &complexes().iter().find(|(s, _)| *s == "wedge").unwrap().1;
    let h = HomologyEngine::new(k);
    let g = h.generators(1).unwrap();
    let a = g[0].clone();
    let a2 = a.add(&Chain::simplex([0u32, 1, 0]).boundary().unwrap()).unwrap();
    let a3 = a2.add(&Chain::simplex([1u32, 1, 0]).boundary().unwrap()).unwrap();
    let w = |x: &Chain, y: &Chain| match h.homologous(x, y).unwrap() {
        Homologous::Witness(w) => w,
        Homologous::Refusal { .. } => panic!("expected homologous"),
    };
    assert!(w(&a, &a).boundary().unwrap().is_zero());
    let w12 = w(&a, &a2);
    let w21 = w(&a2, &a);
    assert_eq!(w12.boundary().unwrap(), w21.boundary().unwrap().neg());
    let w23 = w(&a2, &a3);
    let w13 = w12.add(&w23).unwrap();
    assert_eq!(w13.boundary().unwrap(), a.sub(&a3).unwrap());
    assert!(!h.homologous(&g[0], &g[1]).unwrap().is_homologous());
}

#[test]
fn encodings_agree_and_scale() {
    for stem in ["circle", "wedge", "sphere"] {
        let k = &complexes().iter().find(|(s, _)| *s == stem).unwrap().1;
        let dim = if stem == "sphere" { 2 } else { 1 };
        let literal = NormSolver::new(k).with_encoding(Encoding::BoundaryVariables);
        let reduced = NormSolver::new(k);
        let gens = reduced.homology().generators(dim).unwrap();
        let c = Chain::linear_combine(dim, &vec![q(2, 3); gens.len()], &gens).unwrap();
        let base = reduced.min_l1_in_class(&c).unwrap().value;
        assert_eq!(literal.min_l1_in_class(&c).unwrap().value, base);
        assert_eq!(literal.min_l1_normalised(&c).unwrap().value, base);
        for lambda in [q(-5, 2), q(0, 1), q(7, 3)] {
            let v = reduced.min_l1_in_class(&c.scale(&lambda)).unwrap().value;
            assert_eq!(v, lambda.abs() * &base);
        }
    }
}

#[test]
fn solver_is_deterministic() {
    let k = &complexes().iter().find(|(s, _)| *s == "torus").unwrap().1;
    let a = NormSolver::new(k);
    let b = NormSolver::new(k);
    let g = a.homology().generators(1).unwrap().remove(1);
    let x = a.min_l1_normalised(&g).unwrap();
    let y = b.min_l1_normalised(&g).unwrap();
    assert_eq!(x.solution.basis, y.solution.basis);
    assert_eq!(x.solution.x, y.solution.x);
    assert_eq!(x.chain, y.chain);
}
