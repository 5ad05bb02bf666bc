//! Independent recomputations checked against the library.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sp4_monodromy::basis::{adapted_basis, to_basis_coords, verify_basis};
use sp4_monodromy::certificate::{builtin_certificates, verify_certificate};
use sp4_monodromy::cyclotomic::IntPolynomial;
use sp4_monodromy::exact::{MatrixQ, Rational, VectorQ};
use sp4_monodromy::form::{invariant_form, proportionality, Normalization, SymplecticForm};
use sp4_monodromy::monodromy::{companion, evaluate_word, levelt_triple, Generator, GroupWord, Letter, MonodromyTriple};
use sp4_monodromy::roots::{classify_unipotent, RootLabel};
use sp4_monodromy::search::{derive_witnesses, find_gamma, gamma_candidates, letter_order, GammaStatus, TemplateKind};
use sp4_monodromy::tables::{dataset, find_row, RowRef, TableRow};

type Dense = Vec<Vec<Rational>>;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn dense(m: &MatrixQ) -> Dense {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting at `pos` moves the new element past `len - pos` others.
            let flips = p.len() - pos;
            out.push((q, even == (flips % 2 == 0)));
        }
    }
    out
}

fn leibniz(m: &Dense) -> Rational {
    let n = m.len();
    permutations(n)
        .into_iter()
        .map(|(p, even)| {
            let term = (0..n).fold(Rational::one(), |acc, i| acc * &m[i][p[i]]);
            if even {
                term
            } else {
                -term
            }
        })
        .fold(Rational::zero(), |a, b| a + b)
}

fn minor(m: &Dense, rows: &[usize], cols: &[usize]) -> Rational {
    let sub: Dense = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
    leibniz(&sub)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest `k` with a nonzero `k × k` minor.
fn rank_by_minors(m: &Dense) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            subsets(rows, k)
                .iter()
                .any(|rs| subsets(cols, k).iter().any(|cs| !minor(m, rs, cs).is_zero()))
        })
        .unwrap_or(0)
}

fn adjugate_inverse(m: &Dense) -> Dense {
    let n = m.len();
    let det = leibniz(m);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let rs: Vec<usize> = (0..n).filter(|&k| k != j).collect();
                    let cs: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                    let c = minor(m, &rs, &cs);
                    let signed = if (i + j) % 2 == 0 { c } else { -c };
                    signed / &det
                })
                .collect()
        })
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, range: i64) -> MatrixQ {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-range..=range)).collect())
        .collect();
    MatrixQ::from_i64(&data).unwrap()
}

#[test]
fn determinant_matches_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=5 {
        for _ in 0..20 {
            let m = random_matrix(&mut rng, n, n, 6);
            assert_eq!(m.determinant().unwrap(), leibniz(&dense(&m)));
        }
    }
}

#[test]
fn inverse_matches_adjugate() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 40 {
        let m = random_matrix(&mut rng, 4, 4, 5);
        if leibniz(&dense(&m)).is_zero() {
            assert!(m.inverse().is_err());
            continue;
        }
        assert_eq!(dense(&m.inverse().unwrap()), adjugate_inverse(&dense(&m)));
        checked += 1;
    }
}

#[test]
fn rank_and_nullspace_match_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        // Low-rank products make deficient cases common.
        let k = rng.gen_range(1..=3);
        let m = &random_matrix(&mut rng, rows, k, 3) * &random_matrix(&mut rng, k, cols, 3);
        let rank = rank_by_minors(&dense(&m));
        assert_eq!(m.rank(), rank);
        let kernel = m.nullspace();
        assert_eq!(kernel.len(), cols - rank);
        for x in &kernel {
            assert!(m.mul_vec(x).unwrap().is_zero());
        }
        if !kernel.is_empty() {
            let basis = MatrixQ::from_columns(&kernel).unwrap();
            assert_eq!(rank_by_minors(&dense(&basis)), kernel.len());
        }
    }
}

/// Characteristic polynomial by Faddeev–LeVerrier, ascending coefficients.
fn faddeev_leverrier(m: &Dense) -> Vec<Rational> {
    let n = m.len();
    let mul = |a: &Dense, b: &Dense| -> Dense {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk: Dense = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mul(m, &mk);
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / r(k as i64);
    }
    coeffs
}

fn as_rationals(p: &IntPolynomial) -> Vec<Rational> {
    p.coefficients().iter().map(|c| Rational::from_integer(c.clone())).collect()
}

#[test]
fn companion_characteristic_polynomials() {
    for row in dataset() {
        for p in [&row.f, &row.g] {
            let m = companion(p).unwrap();
            assert_eq!(faddeev_leverrier(&dense(&m)), as_rationals(p), "{}", row.id());
        }
    }
}

fn triple(row: &TableRow) -> MonodromyTriple {
    levelt_triple(&row.f, &row.g).unwrap()
}

fn row(id: &str) -> &'static TableRow {
    find_row(dataset(), id.parse::<RowRef>().unwrap()).unwrap()
}

#[test]
fn v_by_cramer() {
    // Solve A x = B e₄ column by column with Cramer's rule.
    for row in dataset() {
        let t = triple(row);
        let a = dense(&t.a);
        let be4: Vec<Rational> = (0..4).map(|i| t.b.get(i, 3).clone()).collect();
        let det = leibniz(&a);
        let x: Vec<Rational> = (0..4)
            .map(|j| {
                let mut aj = a.clone();
                for i in 0..4 {
                    aj[i][j] = be4[i].clone();
                }
                leibniz(&aj) / &det
            })
            .collect();
        let mut v = x;
        v[3] -= Rational::one();
        assert_eq!(VectorQ::new(v), t.v, "{}", row.id());
    }
}

fn integer_rows(m: &MatrixQ) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_integer()).collect()).collect()
}

/// Rank by fraction-free Bareiss elimination over the integers.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                m[i][j] = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rows of `Mᵀ X M - X = 0` in the unknowns `X[i][j]`, `i < j`, built
/// entry by entry from the index formula.
fn invariance_rows(ms: &[&MatrixQ]) -> Vec<Vec<BigInt>> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for m in ms {
        let a = integer_rows(m);
        for p in 0..4 {
            for q in 0..4 {
                let row = pairs
                    .iter()
                    .map(|&(i, j)| {
                        // (Mᵀ E M)[p][q] for E = e_i e_jᵀ - e_j e_iᵀ.
                        let image = &a[i][p] * &a[j][q] - &a[j][p] * &a[i][q];
                        let own = BigInt::from(i32::from((p, q) == (i, j)) - i32::from((p, q) == (j, i)));
                        image - own
                    })
                    .collect();
                out.push(row);
            }
        }
    }
    out
}

#[test]
fn form_by_second_solver() {
    for row in dataset() {
        let t = triple(row);
        let system = invariance_rows(&[&t.a, &t.b]);
        assert_eq!(bareiss_rank(system.clone()), 5, "{}", row.id());
        let form = invariant_form(&t).unwrap();
        let w = &form.omega;
        let x: Vec<BigInt> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(i, j)| w.get(i, j).to_integer())
            .collect();
        for eq in &system {
            let s = eq.iter().zip(&x).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
            assert!(s.is_zero(), "{}", row.id());
        }
        assert!(!leibniz(&dense(w)).is_zero());
        let content = x.iter().fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
        assert!(content.is_one());
        assert!(x.iter().find(|v| !v.is_zero()).unwrap().is_positive());
    }
}

#[test]
fn printed_forms_are_multiples() {
    for c in builtin_certificates() {
        let t = levelt_triple(
            &sp4_monodromy::from_exponents(&c.alpha).unwrap(),
            &sp4_monodromy::from_exponents(&c.beta).unwrap(),
        )
        .unwrap();
        let computed = invariant_form(&t).unwrap().omega;
        let printed = c.omega.clone().unwrap();
        let k = computed.get(0, 1) / printed.get(0, 1);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(computed.get(i, j), &(printed.get(i, j) * &k), "{}", c.example_id);
            }
        }
        assert_eq!(proportionality(&printed, &computed), Some(Rational::one() / k));
    }
}

#[test]
fn gram_by_hand() {
    for c in builtin_certificates() {
        let omega = dense(c.omega.as_ref().unwrap());
        let vs: Vec<&VectorQ> = c.basis.iter().collect();
        let pair = |u: &VectorQ, w: &VectorQ| {
            let mut s = Rational::zero();
            for i in 0..4 {
                for j in 0..4 {
                    s += &u[i] * &omega[i][j] * &w[j];
                }
            }
            s
        };
        let form = SymplecticForm::new(c.omega.clone().unwrap(), Normalization::Printed).unwrap();
        let g = verify_basis(&form, &c.symplectic_basis().unwrap()).unwrap();
        assert_eq!(pair(vs[0], vs[3]), g.c1, "{}", c.example_id);
        assert_eq!(pair(vs[1], vs[2]), g.c2, "{}", c.example_id);
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert!(pair(vs[i], vs[j]).is_zero(), "{} ({i},{j})", c.example_id);
        }
    }
}

/// Reduced words in shortlex order, by direct enumeration of letter tuples.
fn brute_force_words(max_len: usize, max_exp: u32) -> Vec<Vec<Letter>> {
    let letters = {
        let mut l = Vec::new();
        for g in [Generator::A, Generator::B] {
            for e in 1..=i64::from(max_exp) {
                l.push(Letter::new(g, e));
                l.push(Letter::new(g, -e));
            }
        }
        l
    };
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut idx = vec![0usize; len];
        loop {
            let word: Vec<Letter> = idx.iter().map(|&i| letters[i]).collect();
            if word.windows(2).all(|w| w[0].gen != w[1].gen) {
                out.push(word);
            }
            let mut k = len;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < letters.len() {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    out
}

fn e4_after(t: &MonodromyTriple, w: &[Letter]) -> Rational {
    let mut v = t.v.clone();
    for l in w.iter().rev() {
        v = t.letter_matrix(*l).mul_vec(&v).unwrap();
    }
    v[3].clone()
}

fn good(c: &Rational) -> bool {
    !c.is_zero() && c.abs() <= r(2)
}

#[test]
fn bfs_matches_brute_force() {
    let (max_len, max_exp) = (2, 4);
    let words = brute_force_words(max_len, max_exp);
    assert_eq!(words.len(), 16 + 16 * 8);
    assert_eq!(
        letter_order(max_exp),
        words.iter().take(16).map(|w| w[0]).collect::<Vec<_>>()
    );
    for row in dataset() {
        let t = triple(row);
        let res = find_gamma(&t, max_len, max_exp);
        let all: Vec<Vec<Letter>> = gamma_candidates(&t, max_len, max_exp, usize::MAX)
            .into_iter()
            .map(|(w, c)| {
                assert_eq!(e4_after(&t, w.letters()), Rational::from_integer(c));
                w.letters().to_vec()
            })
            .collect();
        let expected: Vec<Vec<Letter>> = if res.status == GammaStatus::Obstructed {
            Vec::new()
        } else {
            words.iter().filter(|w| good(&e4_after(&t, w))).cloned().collect()
        };
        assert_eq!(all, expected, "{}", row.id());
        if res.status == GammaStatus::Obstructed {
            let g = t.v.entries().iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, &x.to_integer()));
            assert!(g >= BigInt::from(3));
            assert!(words.iter().all(|w| !good(&e4_after(&t, w))), "{}", row.id());
            continue;
        }
        match words.iter().position(|w| good(&e4_after(&t, w))) {
            Some(i) => {
                assert_eq!(res.status, GammaStatus::Found, "{}", row.id());
                assert_eq!(res.gamma.unwrap().letters(), words[i].as_slice(), "{}", row.id());
                assert_eq!(res.explored, i as u64 + 1, "{}", row.id());
            }
            None => {
                assert_eq!(res.status, GammaStatus::Exhausted, "{}", row.id());
                assert_eq!(res.explored, words.len() as u64);
            }
        }
    }
}

#[test]
fn first_example_search() {
    let t = triple(row("3:1"));
    let printed: GroupWord = "B^-3 A^7".parse().unwrap();
    let w = evaluate_word(&t, &printed).mul_vec(&t.v).unwrap();
    assert!(good(&w[3]));
    let res = find_gamma(&t, 2, 8);
    let words = brute_force_words(2, 8);
    let first = words.iter().position(|w| good(&e4_after(&t, w))).unwrap();
    assert_eq!(res.gamma.as_ref().unwrap().letters(), words[first].as_slice());
    assert_eq!(res.gamma.unwrap().to_string(), "B^2");
}

#[test]
fn search_is_thread_independent() {
    let t = triple(row("4:3"));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| find_gamma(&t, 2, 8))
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
}

#[test]
fn derived_recipes_reverify() {
    let conj = TemplateKind::Conjugated;
    let cases: [(usize, &str, Option<(TemplateKind, i64)>); 7] = [
        (1, "B^-3 A^7", None),
        (2, "A^4", Some((conj, 13))),
        (3, "A^4", Some((conj, 23))),
        (5, "B^3", None),
        (6, "A^4", None),
        (7, "B^3", None),
        (8, "A^3 B", None),
    ];
    for (n, gamma, stated) in cases {
        let id = format!("3:{n}");
        let row = row(&id);
        let t = triple(row);
        let form = invariant_form(&t).unwrap();
        let gamma: GroupWord = gamma.parse().unwrap();
        let basis = adapted_basis(&form, &t.v, &evaluate_word(&t, &gamma)).unwrap();
        let d = derive_witnesses(&t, &form, &basis, &gamma, 32).unwrap();
        assert!(d.is_complete(), "{id}: {:?}", d.coverage.labels());
        let hit = d.template.unwrap();
        if let Some((kind, a)) = stated {
            assert_eq!((hit.kind, hit.a), (kind, a), "{id}");
        }

        let gram = verify_basis(&form, &basis).unwrap();
        let g = gram.matrix();
        for w in &d.witnesses {
            let m = &d.values[&w.name];
            assert_eq!(classify_unipotent(m, &gram), Ok(w.root), "{id} {}", w.name);
            assert_eq!(&m.transpose() * &(&g * m), g);
        }
        let roots: Vec<RootLabel> = d.witnesses.iter().map(|w| w.root).collect();
        for l in RootLabel::POSITIVE {
            assert!(roots.contains(&l), "{id} lacks {l}");
        }
        let p = to_basis_coords(&t.c, &basis).unwrap();
        assert_eq!(d.values["P"], p);

        let cert = d.certificate(&id, &row.alpha, &row.beta, &basis);
        let report = verify_certificate(&cert);
        assert!(report.arithmetic_certified, "{id}: {:?}", report.failures);
    }
}
