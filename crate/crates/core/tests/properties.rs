use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use twistspin_core::abelian::{relation_matrix, AbelianInvariants};
use twistspin_core::enumeration::{
    enumerate, low_index_search, nonabelian_witness, order, Certificate, Claim, Verdict,
};
use twistspin_core::hypgeom::{
    evaluate_word, generators, rotation_about, translation, verify_fixed_word, DiskIsometry,
    Tolerances,
};
use twistspin_core::presentation::Presentation;
use twistspin_core::smith::{
    determinant, invariant_factors, smith_normal_form, smith_normal_form_big, Matrix, SmithForm,
};
use twistspin_core::topology::{
    brieskorn_pi1, fixed_knot_word, fixed_knot_word_simplified_q3, h1_branched_cover,
    miyazawa_degree, seifert_invariants, sphere_check, triangle_group, SpinParams, TriangleParams,
};
use twistspin_core::word::{commutator, reduce, Word};
use twistspin_core::{abelianization, Error};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(cases)
    }
}

fn raw_word(rank: u32, max_len: usize) -> impl Strategy<Value = Vec<(u32, i64)>> {
    prop::collection::vec((0..rank, -4i64..=4), 0..max_len)
}

fn word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    raw_word(rank, max_len).prop_map(reduce)
}

/// Letter-level free reduction, independent of the syllable code.
fn naive_reduce(raw: &[(u32, i64)]) -> Vec<(u32, bool)> {
    let mut out: Vec<(u32, bool)> = Vec::new();
    for &(g, e) in raw {
        for _ in 0..e.unsigned_abs() {
            let letter = (g, e > 0);
            if out.last() == Some(&(g, e < 0)) {
                out.pop();
            } else {
                out.push(letter);
            }
        }
    }
    out
}

fn letters_of(w: &Word) -> Vec<(u32, bool)> {
    w.syllables()
        .iter()
        .flat_map(|s| {
            std::iter::repeat_n(
                (s.generator, s.exponent > 0),
                s.exponent.unsigned_abs() as usize,
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn reduce_is_idempotent_and_free(raw in raw_word(4, 1000)) {
        let w = reduce(raw.clone());
        let again = reduce(w.syllables().iter().map(|s| (s.generator, s.exponent)));
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(letters_of(&w), naive_reduce(&raw));
        prop_assert!(w.mul(&w.inverse()).is_identity());
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(pair[0].generator, pair[1].generator);
        }
    }

    #[test]
    fn power_and_conjugate_agree_with_products(w in word(3, 30), g in word(3, 10), n in -6i64..=6) {
        let mut expected = Word::identity();
        for _ in 0..n.unsigned_abs() {
            expected = expected.mul(&if n < 0 { w.inverse() } else { w.clone() });
        }
        prop_assert_eq!(w.pow(n), expected);
        prop_assert_eq!(w.conjugate(&g), g.inverse().mul(&w).mul(&g));
        prop_assert_eq!(commutator(&g, &w), g.inverse().mul(&w.inverse()).mul(&g).mul(&w));
    }

    #[test]
    fn abelianization_paths_agree(
        rels in prop::collection::vec(word(3, 12), 0..4),
        extra in word(3, 12),
    ) {
        let p = Presentation::new(vec!["a", "b", "c"], rels).unwrap();
        let via_quotient = abelianization(&p.quotient_by_normal_closure(std::slice::from_ref(&extra)).unwrap()).unwrap();
        let mut rows: Vec<Vec<i64>> = (0..relation_matrix(&p).rows())
            .map(|i| relation_matrix(&p).row(i).to_vec())
            .collect();
        rows.push(extra.exponent_sums(3));
        let m = Matrix::from_rows(rows, 3);
        let via_matrix = AbelianInvariants::from_diagonal(&invariant_factors(&m), 3).unwrap();
        prop_assert_eq!(via_quotient, via_matrix);
    }

    #[test]
    fn centralize_is_quotient_by_commutators(rels in prop::collection::vec(word(3, 8), 0..3), w in word(3, 8)) {
        let p = Presentation::new(vec!["a", "b", "c"], rels).unwrap();
        let comms: Vec<Word> = (0..3).map(|g| commutator(&Word::generator(g), &w)).collect();
        prop_assert_eq!(p.centralize(&w).unwrap(), p.quotient_by_normal_closure(&comms).unwrap());
    }

    #[test]
    fn presentation_text_round_trip(rels in prop::collection::vec(word(3, 10), 0..5), m in word(3, 6)) {
        let p = Presentation::new(vec!["a", "b", "c"], rels).unwrap().with_marked("meridian", m).unwrap();
        prop_assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Presentation>(&json).unwrap(), p);
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all k×k minors.
fn determinantal_divisor(m: &Matrix<i64>, k: usize) -> BigInt {
    let big = m.to_big();
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            let minor = Matrix::from_rows(
                rows.iter()
                    .map(|&i| cols.iter().map(|&j| big[(i, j)].clone()).collect())
                    .collect(),
                k,
            );
            g = gcd_big(&g, &determinant(&minor));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = Matrix<i64>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-10i64..=10, c), r)
            .prop_map(move |rows| Matrix::from_rows(rows, c))
    })
}

proptest! {
    #![proptest_config(config(10_000))]

    #[test]
    fn smith_normal_form_properties(m in matrix()) {
        // Overflow in 64 bits is signalled; the arbitrary-precision path
        // must then agree with the checked path wherever the latter succeeds.
        let big = m.to_big();
        let snf = match smith_normal_form(&m) {
            Ok(s) => {
                let b = smith_normal_form_big(&big);
                prop_assert_eq!(
                    s.diagonal().into_iter().map(BigInt::from).collect::<Vec<_>>(),
                    b.diagonal()
                );
                SmithForm { d: s.d.to_big(), u: s.u.to_big(), v: s.v.to_big() }
            }
            Err(Error::Overflow(_)) => smith_normal_form_big(&big),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(&snf.u.mul(&big).unwrap().mul(&snf.v).unwrap(), &snf.d);
        prop_assert_eq!(determinant(&snf.u).abs(), BigInt::from(1));
        prop_assert_eq!(determinant(&snf.v).abs(), BigInt::from(1));
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_zero() || w[1].is_zero(), "zeros must trail");
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        // d₁⋯d_k equals the gcd of the k×k minors; checked for every k on
        // small matrices and for k = 1 and full-rank squares otherwise.
        let small = m.rows().min(m.cols()) <= 3 && m.rows().max(m.cols()) <= 5;
        let mut prefix = BigInt::from(1);
        for (k, d) in diag.iter().enumerate() {
            prefix *= d;
            let k = k + 1;
            if small || k == 1 {
                prop_assert_eq!(determinantal_divisor(&m, k), prefix.clone(), "k = {}", k);
            }
        }
        if m.rows() == m.cols() {
            prop_assert_eq!(determinant(&big).abs(), prefix);
        }
    }
}

fn small_presentation() -> impl Strategy<Value = Presentation> {
    (2i64..=5, 2i64..=5, prop::collection::vec(word(2, 8), 0..3)).prop_map(|(k, l, extra)| {
        let mut rels = vec![Word::power_of(0, k), Word::power_of(1, l)];
        rels.extend(extra);
        Presentation::new(vec!["a", "b"], rels).unwrap()
    })
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn finite_outcomes_replay_and_are_deterministic(
        p in small_presentation(),
        sub in prop::collection::vec(word(2, 4), 0..2),
    ) {
        let out = enumerate(&p, &sub, 3000).unwrap();
        if let Verdict::Finite { index, table } = &out.verdict {
            prop_assert_eq!(*index, table.degree());
            table.validate(p.relators(), &sub).unwrap();
            prop_assert!(table.is_standard());
            let again = enumerate(&p, &sub, 3000).unwrap();
            prop_assert_eq!(again.table(), Some(table));
            prop_assert_eq!(again.work, out.work);
        }
    }

    #[test]
    fn closing_is_monotone_in_the_cap(p in small_presentation(), cap in 1usize..400, bigger in 1usize..5000) {
        let small = enumerate(&p, &[], cap).unwrap();
        if let Some(index) = small.index() {
            let big = enumerate(&p, &[], cap + bigger).unwrap();
            prop_assert_eq!(big.index(), Some(index));
        }
    }

    #[test]
    fn witnesses_revalidate(p in small_presentation()) {
        let c = nonabelian_witness(&p, 4).unwrap();
        if let Claim::NonabelianWitness { .. } = c.claim {
            c.verify().unwrap();
        }
        let json = c.to_json();
        prop_assert_eq!(Certificate::from_json(&json).unwrap(), c);
    }

    #[test]
    fn certificates_round_trip_bit_exactly(p in small_presentation(), tol_exp in -10i32..=-6, mantissa in 1.0f64..9.99) {
        let c = order(&p, 2000).unwrap();
        c.verify().unwrap();
        let json = c.to_json();
        let back = Certificate::from_json(&json).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_json(), json);

        let tol = mantissa * 10f64.powi(tol_exp);
        let g = verify_fixed_word(3, 7, Tolerances { identity: tol, length: tol }).unwrap();
        let json = g.to_json();
        let back = Certificate::from_json(&json).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), json);
    }
}

/// Order of the permutation group generated by `gens`, by closure.
fn closure_order(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

#[test]
fn orders_match_permutation_closure() {
    for n in 3..=12usize {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let brute = closure_order(&[rotation, reflection]);
        let text = format!("a, b\na^{n}\nb^2\na b a b\n");
        let c = order(&Presentation::parse(&text).unwrap(), 10_000).unwrap();
        assert_eq!(
            c.claim,
            Claim::FiniteOrder {
                order: brute as u64
            },
            "dihedral {n}"
        );
    }
    let s3 = closure_order(&[vec![1, 0, 2], vec![0, 2, 1]]);
    let c = order(
        &Presentation::parse("a, b\na^2\nb^2\na b a b a b\n").unwrap(),
        100,
    )
    .unwrap();
    assert_eq!(c.claim, Claim::FiniteOrder { order: s3 as u64 });
}

fn coprime(a: i64, b: i64) -> bool {
    num_integer::gcd(a, b) == 1
}

#[test]
fn seifert_identity_for_all_small_triples() {
    let mut count = 0;
    for p in 2..=50 {
        for q in 2..=50 {
            for r in 2..=50 {
                if !(coprime(p, q) && coprime(p, r) && coprime(q, r)) {
                    continue;
                }
                let t = TriangleParams::new(p, q, r).unwrap();
                let s = seifert_invariants(&t);
                assert_eq!(s.defect(&t), 1, "({p}, {q}, {r})");
                assert!((0..p).contains(&s.b1) && (0..q).contains(&s.b2) && (0..r).contains(&s.b3));
                count += 1;
            }
        }
    }
    assert!(count > 10_000);
}

#[test]
fn brieskorn_groups_are_perfect() {
    for q in (3..=30).step_by(2) {
        for r in (3..=30).step_by(2) {
            if q == r || !coprime(q, r) {
                continue;
            }
            let t = TriangleParams::new(2, q, r).unwrap();
            assert!(
                abelianization(&brieskorn_pi1(&t)).unwrap().is_trivial(),
                "(2, {q}, {r})"
            );
        }
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn triangle_groups_are_perfect(p in 2i64..40, q in 2i64..40, r in 2i64..40) {
        prop_assume!(coprime(p, q) && coprime(p, r) && coprime(q, r));
        let t = TriangleParams::new(p, q, r).unwrap();
        prop_assert!(abelianization(&triangle_group(&t)).unwrap().is_trivial());
    }

    #[test]
    fn homology_does_not_depend_on_rolls(m in -20i64..20, n1 in -50i64..50, n2 in -50i64..50, det in 0u64..40) {
        let det = 2 * det + 1;
        let a = h1_branched_cover(&SpinParams::new(m, n1, det).unwrap(), None).unwrap();
        let b = h1_branched_cover(&SpinParams::new(m, n2, det).unwrap(), None).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn pipelines_agree_where_both_close() {
    let mut cases: Vec<(i64, i64)> = (7..=37)
        .step_by(2)
        .filter(|&r| coprime(r, 6))
        .map(|r| (3, r))
        .collect();
    cases.extend([(5, 7), (5, 9), (5, 11), (7, 9)]);
    for (q, r) in cases {
        let c = sphere_check(q, r, 300_000).unwrap();
        let (a, b) = (&c.steps[0].claim, &c.steps[1].claim);
        if !a.is_inconclusive() && !b.is_inconclusive() {
            assert_eq!(a, b, "({q}, {r})");
        }
        if q == 3 {
            assert_eq!(c.claim, Claim::HomotopySphere, "(3, {r})");
        }
        c.verify().unwrap();
    }
}

#[test]
fn degree_preimages_come_in_pairs() {
    let mut preimages: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for s in -50..=50 {
        preimages.entry(miyazawa_degree(s)).or_default().push(s);
    }
    let values: Vec<u64> = preimages.keys().copied().collect();
    let expected: Vec<u64> = (0..values.len() as u64).map(|i| 2 * i + 1).collect();
    assert_eq!(values, expected, "image is an initial run of odd integers");
    assert!(preimages.values().all(|s| s.len() <= 2));
    for s in -6..=6 {
        assert_eq!(preimages[&miyazawa_degree(s)].len(), 2, "s = {s}");
    }
}

#[test]
fn simplified_word_has_the_same_image() {
    for r in [7i64, 11, 13, 17, 19] {
        let y = fixed_knot_word(3, r).unwrap();
        let s = fixed_knot_word_simplified_q3(r).unwrap();
        let delta = triangle_group(&TriangleParams::new(2, 3, r).unwrap());
        for t in low_index_search(&delta, 7).unwrap() {
            for c in 0..t.degree() as u32 {
                assert_eq!(t.act(c, &y), t.act(c, &s), "r = {r}");
            }
        }
        let gens = generators(3, r).unwrap();
        let d = evaluate_word(&y, &gens)
            .unwrap()
            .distance_up_to_sign(&evaluate_word(&s, &gens).unwrap());
        assert!(d < 1e-9, "r = {r}: {d}");
    }
}

fn point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.9, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn determinant_is_preserved(w in word(3, 60)) {
        prop_assume!(w.letter_len() <= 200);
        let gens = generators(3, 7).unwrap();
        let m = evaluate_word(&w, &gens).unwrap();
        prop_assert!((m.determinant() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn comparisons_ignore_sign(w in word(3, 20)) {
        let m = evaluate_word(&w, &generators(3, 7).unwrap()).unwrap();
        let neg = DiskIsometry { alpha: -m.alpha, beta: -m.beta };
        prop_assert_eq!(m.distance_up_to_sign(&neg), 0.0);
    }

    #[test]
    fn rotation_is_conjugation_covariant(p1 in point(), p2 in point(), theta in -6.0f64..6.0) {
        let t = translation(p1).unwrap() * translation(p2).unwrap();
        let image = t.apply(Complex64::new(0.0, 0.0));
        prop_assume!(image.norm() < 0.95);
        let direct = rotation_about(image, theta).unwrap();
        let conj = t * rotation_about(Complex64::new(0.0, 0.0), theta).unwrap() * t.inverse();
        prop_assert!(direct.distance_up_to_sign(&conj) < 1e-9);
        prop_assert!((direct.apply(image) - image).norm() < 1e-9);
    }

    #[test]
    fn equal_words_have_equal_matrices(
        u in word(3, 10),
        v in word(3, 10),
        conj in word(3, 6),
        which in 0usize..4,
    ) {
        let delta = triangle_group(&TriangleParams::new(2, 3, 7).unwrap());
        let rel = delta.relators()[which].conjugate(&conj);
        let w1 = u.mul(&v);
        let w2 = u.mul(&rel).mul(&v);
        let gens = generators(3, 7).unwrap();
        let m1 = evaluate_word(&w1, &gens).unwrap();
        let m2 = evaluate_word(&w2, &gens).unwrap();
        prop_assert!(m1.distance_up_to_sign(&m2) < 1e-7);
        for t in low_index_search(&delta, 7).unwrap() {
            prop_assert_eq!(t.act(0, &w1), t.act(0, &w2));
        }
    }
}

#[test]
fn geometry_verdicts_are_stable_across_tolerances() {
    for (q, r) in [(3, 7), (3, 13), (3, 19), (5, 7)] {
        let verdicts: Vec<(Claim, Vec<bool>)> = [1e-10, 1e-9, 1e-8, 1e-7, 1e-6]
            .iter()
            .map(|&tol| {
                let c = verify_fixed_word(
                    q,
                    r,
                    Tolerances {
                        identity: tol,
                        length: tol,
                    },
                )
                .unwrap();
                let passes = match &c.evidence {
                    twistspin_core::enumeration::Evidence::Geometry { checks } => {
                        checks.iter().map(|c| c.passed).collect()
                    }
                    _ => unreachable!(),
                };
                (c.claim, passes)
            })
            .collect();
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "({q}, {r})");
    }
}
