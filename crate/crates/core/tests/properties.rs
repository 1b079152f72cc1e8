use colorlie::algebra::{sl2_factory, tensor_color_construct};
use colorlie::group::{canonical_cocycle, GroupElement};
use colorlie::linalg::{add_vectors, is_zero_vector, q, qi, scale_vector, Q};
use colorlie::perm::Permutation;
use colorlie::poly::*;
use colorlie::rank::{rank_exact_i64, rank_mod_p, rational_reconstruct};
use colorlie::ring::PrimeField;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random bracketing of `word`.
fn tree(word: &[Var], cuts: &[usize]) -> Monomial {
    if word.len() == 1 {
        return Monomial::leaf(word[0]);
    }
    let cut = 1 + cuts.first().copied().unwrap_or(0) % (word.len() - 1);
    let rest = cuts.get(1..).unwrap_or(&[]);
    Monomial::bracket(tree(&word[..cut], rest), tree(&word[cut..], rest))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    any::<u64>().prop_map(move |s| Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(s)))
}

fn poly_in(n: usize) -> impl Strategy<Value = MultilinearPoly> {
    prop::collection::vec((-4i64..=4, perm(n), prop::collection::vec(0usize..8, n)), 1..5).prop_map(move |terms| {
        let mut f = MultilinearPoly::zero(1..=n as Var);
        for (c, p, cuts) in terms {
            let word: Vec<Var> = (0..n).map(|i| p.apply(i) as Var + 1).collect();
            f.add_term(qi(c), tree(&word, &cuts)).unwrap();
        }
        f
    })
}

fn vec3() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-5i64..=5).prop_map(qi), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_display_parses_back(p in perm(6), cuts in prop::collection::vec(0usize..10, 6)) {
        let word: Vec<Var> = (0..6).map(|i| p.apply(i) as Var + 1).collect();
        let m = tree(&word, &cuts);
        let back: Monomial = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn symmetric_group_acts_on_the_left(f in poly_in(4), s in perm(4), t in perm(4)) {
        let lhs = sn_act(&s, &sn_act(&t, &f).unwrap()).unwrap();
        let rhs = sn_act(&s.compose(&t), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_sign_is_multiplicative(s in perm(6), t in perm(6)) {
        prop_assert_eq!(s.compose(&t).sign(), s.sign() * t.sign());
        prop_assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn alternation_squares_to_a_multiple(f in poly_in(4)) {
        let y = [1, 2, 3];
        let once = alt_on_set(&f, &y).unwrap();
        let twice = alt_on_set(&once, &y).unwrap();
        prop_assert_eq!(twice, once.scale(&qi(6)));
    }

    #[test]
    fn alternation_vanishes_on_repeated_values(f in poly_in(4), x in vec3(), y in vec3(), z in vec3()) {
        let alt = alt_on_set(&f, &[1, 2, 3]).unwrap();
        let e = Evaluation::new().with(1, x.clone()).with(2, y).with(3, x).with(4, z);
        prop_assert!(is_zero_vector(&evaluate(&alt, &sl2_factory(), &e).unwrap()));
    }

    #[test]
    fn evaluation_is_linear_in_each_variable(f in poly_in(3), a in vec3(), b in vec3(), c in vec3(), d in vec3(), s in -3i64..=3) {
        let sl2 = sl2_factory();
        let at = |first: Vec<Q>| evaluate(&f, &sl2, &Evaluation::new().with(1, first).with(2, c.clone()).with(3, d.clone())).unwrap();
        let combined = at(add_vectors(&a, &scale_vector(&qi(s), &b)));
        let split = add_vectors(&at(a.clone()), &scale_vector(&qi(s), &at(b.clone())));
        prop_assert_eq!(combined, split);
    }

    #[test]
    fn tilde_transform_is_an_involution(p in perm(3), c in prop::collection::vec(-4i64..=4, 6), degs in prop::collection::vec(0usize..4, 4)) {
        let degrees: Vec<GroupElement> = degs.iter().map(|&i| GroupElement::ALL[i]).collect();
        let mut terms = Vec::new();
        for (k, coef) in c.iter().enumerate() {
            let word: Vec<Var> = std::iter::once(1).chain((0..3).map(|i| (p.apply((i + k) % 3) + 2) as Var)).collect();
            terms.push((qi(*coef), Monomial::left_normed(&word)));
        }
        let f = MultilinearPoly::from_terms(terms).unwrap();
        let s = canonical_cocycle();
        let twice = tilde_transform(&tilde_transform(&f, &degrees, s.table()).unwrap(), &degrees, s.table()).unwrap();
        prop_assert_eq!(twice, f);
    }

    #[test]
    fn modular_rank_never_exceeds_exact(m in prop::collection::vec(prop::collection::vec(-20i64..=20, 5), 1..7)) {
        let exact = rank_exact_i64(&m);
        for p in [7u64, 1_000_003] {
            prop_assert!(rank_mod_p(&m, &PrimeField::new(p).unwrap()) <= exact);
        }
        prop_assert_eq!(rank_mod_p(&m, &PrimeField::new(67_108_859).unwrap()), exact);
    }

    #[test]
    fn rational_reconstruction_recovers_small_fractions(n in -1000i64..=1000, d in 1i64..=1000) {
        let p = BigInt::from(67_108_859u64) * BigInt::from(33_554_393u64);
        let x = q(n, d);
        let inv = BigInt::from(d).modinv(&p).unwrap();
        let image = (BigInt::from(n) * inv).mod_floor(&p);
        prop_assert_eq!(rational_reconstruct(&image, &p), Some(x));
    }

    #[test]
    fn evaluation_serializes(xs in prop::collection::vec(vec3(), 1..5)) {
        let mut e = Evaluation::new();
        for (i, x) in xs.into_iter().enumerate() {
            e.set(i as Var + 1, x);
        }
        let back: Evaluation = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn color_sign_matches_tensor_evaluation(p in perm(3), degs in prop::collection::vec(0usize..4, 3), xs in prop::collection::vec(0usize..3, 3)) {
        let sl2 = sl2_factory();
        let s = canonical_cocycle();
        let l = tensor_color_construct(&sl2, s.table()).unwrap();
        let degrees: Vec<GroupElement> = degs.iter().map(|&i| GroupElement::ALL[i]).collect();
        let word: Vec<Var> = (0..3).map(|i| p.apply(i) as Var + 1).collect();
        let m = MultilinearPoly::monomial(Monomial::left_normed(&word)).unwrap();
        let mut el = Evaluation::new();
        let mut eb = Evaluation::new();
        for v in 0..3 {
            let mut unit = vec![qi(0); 3];
            unit[xs[v]] = qi(1);
            let mut lifted = vec![qi(0); 12];
            lifted[colorlie::algebra::tensor_index(degrees[v], xs[v], 3)] = qi(1);
            eb.set(v as Var + 1, unit);
            el.set(v as Var + 1, lifted);
        }
        let lhs = evaluate(&m, &l, &el).unwrap();
        let inner = evaluate(&m, &sl2, &eb).unwrap();
        let lambda = color_sign(&word, &degrees, s.table()).unwrap();
        let total = colorlie::group::group_product(degrees.iter().copied());
        let mut rhs = vec![qi(0); 12];
        for (i, x) in inner.iter().enumerate() {
            rhs[colorlie::algebra::tensor_index(total, i, 3)] = x * qi(lambda as i64);
        }
        prop_assert_eq!(lhs, rhs);
    }
}
