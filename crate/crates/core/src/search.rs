//! Searching for a conjugator `γ` and for root-group witnesses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{to_basis_coords, verify_basis, AntiDiagonalGram, SymplecticBasis};
use crate::certificate::{Certificate, Definition, Witness};
use crate::cyclotomic::ExponentVector;
use crate::error::Result;
use crate::exact::{cancelling_pair, MatrixQ, Rational, VectorQ};
use crate::form::SymplecticForm;
use crate::monodromy::{evaluate_word, Generator, GroupWord, Letter, MonodromyTriple};
use crate::roots::{classify_unipotent, coverage, is_in_u, RootCoverage, RootLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaStatus {
    Found,
    Obstructed,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaResult {
    pub status: GammaStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GroupWord>,
    /// Last coordinate of `γ·v`.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_int"
    )]
    pub e4_coeff: Option<BigInt>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_int"
    )]
    pub obstruction_gcd: Option<BigInt>,
    /// Words examined, counting the hit.
    pub explored: u64,
}

fn ser_opt_int<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(n) => match n.to_i64() {
            Some(v) => s.serialize_some(&v),
            None => s.serialize_some(&n.to_string()),
        },
        None => s.serialize_none(),
    }
}

/// Emitted once per completed BFS level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Progress {
    pub depth: usize,
    pub level_size: u64,
    pub explored: u64,
}

/// gcd of the entries of `v`. Every `γ·v` has all coordinates divisible by it.
pub fn gcd_obstruction(t: &MonodromyTriple) -> BigInt {
    t.v.entries()
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_integer()))
}

/// Letters in search order: `A, A⁻¹, A², A⁻², …, B, B⁻¹, …`.
pub fn letter_order(max_exp: u32) -> Vec<Letter> {
    [Generator::A, Generator::B]
        .into_iter()
        .flat_map(|g| {
            (1..=i64::from(max_exp)).flat_map(move |e| [Letter::new(g, e), Letter::new(g, -e)])
        })
        .collect()
}

type IntVec = [BigInt; 4];
type IntMat = [[BigInt; 4]; 4];

fn to_int_mat(m: &MatrixQ) -> IntMat {
    std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).to_integer()))
}

fn apply(m: &IntMat, v: &IntVec) -> IntVec {
    std::array::from_fn(|i| {
        m[i].iter()
            .zip(v)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    })
}

fn hits(v: &IntVec) -> bool {
    let c = v[3].abs();
    !c.is_zero() && c <= BigInt::from(2)
}

struct Node {
    parent: u32,
    letter: u8,
    vec: IntVec,
}

/// Breadth-first search for `γ` with `0 < |(γ·v)₄| ≤ 2` over reduced words of
/// at most `max_len` letters with exponents in `[-max_exp, max_exp]`, in
/// shortlex order. Returns `Obstructed` straight away when `gcd(v) ≥ 3`.
pub fn find_gamma(t: &MonodromyTriple, max_len: usize, max_exp: u32) -> GammaResult {
    find_gamma_with_progress(t, max_len, max_exp, |_| {})
}

pub fn find_gamma_with_progress(
    t: &MonodromyTriple,
    max_len: usize,
    max_exp: u32,
    mut progress: impl FnMut(Progress),
) -> GammaResult {
    let obstruction = gcd_obstruction(t);
    if obstruction >= BigInt::from(3) {
        return GammaResult {
            status: GammaStatus::Obstructed,
            gamma: None,
            e4_coeff: None,
            obstruction_gcd: Some(obstruction),
            explored: 0,
        };
    }
    let exhausted = |explored| GammaResult {
        status: GammaStatus::Exhausted,
        gamma: None,
        e4_coeff: None,
        obstruction_gcd: None,
        explored,
    };
    if max_len == 0 || max_exp == 0 || t.dim() != 4 {
        return exhausted(0);
    }
    let SearchSpace { letters, mats, v } = SearchSpace::new(t, max_exp);

    let mut levels: Vec<Vec<Node>> = Vec::new();
    let mut explored: u64 = 0;
    for depth in 1..=max_len {
        let level = next_level(levels.last(), &mats, &letters, &v);
        if let Some(pos) = level.par_iter().position_first(|n| hits(&n.vec)) {
            explored += pos as u64 + 1;
            let e4 = level[pos].vec[3].clone();
            levels.push(level);
            let gamma = reconstruct(&levels, pos, &letters);
            let check = evaluate_word(t, &gamma)
                .mul_vec(&t.v)
                .expect("dimensions agree");
            assert_eq!(
                check[3],
                Rational::from_integer(e4.clone()),
                "search vector drifted from the word"
            );
            progress(Progress {
                depth,
                level_size: levels[depth - 1].len() as u64,
                explored,
            });
            return GammaResult {
                status: GammaStatus::Found,
                gamma: Some(gamma),
                e4_coeff: Some(e4),
                obstruction_gcd: None,
                explored,
            };
        }
        explored += level.len() as u64;
        progress(Progress {
            depth,
            level_size: level.len() as u64,
            explored,
        });
        levels.push(level);
    }
    exhausted(explored)
}

fn next_level(prev: Option<&Vec<Node>>, mats: &[IntMat], letters: &[Letter], v: &IntVec) -> Vec<Node> {
    let Some(prev) = prev else {
        return mats
            .par_iter()
            .enumerate()
            .map(|(li, m)| Node {
                parent: u32::MAX,
                letter: li as u8,
                vec: apply(m, v),
            })
            .collect();
    };
    let chunks: Vec<Vec<Node>> = (0..letters.len())
        .into_par_iter()
        .map(|li| {
            prev.iter()
                .enumerate()
                .filter(|(_, n)| letters[n.letter as usize].gen != letters[li].gen)
                .map(|(pi, n)| Node {
                    parent: pi as u32,
                    letter: li as u8,
                    vec: apply(&mats[li], &n.vec),
                })
                .collect()
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

struct SearchSpace {
    letters: Vec<Letter>,
    mats: Vec<IntMat>,
    v: IntVec,
}

impl SearchSpace {
    fn new(t: &MonodromyTriple, max_exp: u32) -> Self {
        let letters = letter_order(max_exp.min(127));
        let mats = letters
            .iter()
            .map(|&l| to_int_mat(&t.letter_matrix(l)))
            .collect();
        let v = std::array::from_fn(|i| t.v[i].to_integer());
        SearchSpace { letters, mats, v }
    }
}

/// Every `γ` satisfying the search condition, in the order [`find_gamma`]
/// visits them, with its `e₄` coefficient; at most `limit` are returned.
/// Empty when `v` is obstructed.
pub fn gamma_candidates(
    t: &MonodromyTriple,
    max_len: usize,
    max_exp: u32,
    limit: usize,
) -> Vec<(GroupWord, BigInt)> {
    if gcd_obstruction(t) >= BigInt::from(3) || max_exp == 0 || t.dim() != 4 {
        return Vec::new();
    }
    let space = SearchSpace::new(t, max_exp);
    let mut levels: Vec<Vec<Node>> = Vec::new();
    let mut out = Vec::new();
    for _ in 0..max_len {
        let level = next_level(levels.last(), &space.mats, &space.letters, &space.v);
        let found: Vec<usize> = (0..level.len()).filter(|&i| hits(&level[i].vec)).collect();
        levels.push(level);
        for i in found {
            if out.len() == limit {
                return out;
            }
            let e4 = levels.last().expect("just pushed")[i].vec[3].clone();
            out.push((reconstruct(&levels, i, &space.letters), e4));
        }
    }
    out
}

fn reconstruct(levels: &[Vec<Node>], mut idx: usize, letters: &[Letter]) -> GroupWord {
    let mut out = Vec::new();
    for level in levels.iter().rev() {
        let n = &level[idx];
        out.push(letters[n.letter as usize]);
        idx = n.parent as usize;
    }
    GroupWord::from_letters(out).expect("search words are reduced")
}

/// Recipe shapes tried by [`derive_witnesses`], in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TemplateKind {
    /// `S = Pᵃ R P⁻ᵃ Q⁻¹`, `T = P S P⁻¹`.
    Conjugated,
    /// `E = Q⁻¹ P⁻ᵃ R Pᵃ`, `F = P E P⁻¹`.
    Reflected,
    /// `S ∈ {Pᵃ R Pᵇ Q, Pᵃ Q Pᵇ R}`, `E = [R, S]`, `F = Q E Q⁻¹`.
    Commutator,
}

pub const ALL_TEMPLATES: [TemplateKind; 3] = [
    TemplateKind::Conjugated,
    TemplateKind::Reflected,
    TemplateKind::Commutator,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateHit {
    pub kind: TemplateKind,
    pub a: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<u8>,
}

/// Outcome of [`derive_witnesses`]: the coverage reached and a recipe that
/// reproduces it from `A`, `B`, `C`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub coverage: RootCoverage,
    pub template: Option<TemplateHit>,
    pub definitions: Vec<Definition>,
    pub witnesses: Vec<Witness>,
    /// Values of every definition in basis coordinates.
    #[serde(skip)]
    pub values: BTreeMap<String, MatrixQ>,
}

impl Derivation {
    pub fn is_complete(&self) -> bool {
        self.coverage.complete()
    }

    /// Packages the recipe as a certificate over `basis`; every integral
    /// value becomes an expected matrix.
    pub fn certificate(
        &self,
        example_id: &str,
        alpha: &ExponentVector,
        beta: &ExponentVector,
        basis: &SymplecticBasis,
    ) -> Certificate {
        Certificate {
            example_id: example_id.to_string(),
            sv_example: None,
            alpha: alpha.clone(),
            beta: beta.clone(),
            omega: None,
            gram: None,
            basis: basis.vectors().into_iter().cloned().collect(),
            reversed_basis: false,
            definitions: self.definitions.clone(),
            expected: self
                .values
                .iter()
                .filter(|(_, m)| m.is_integral())
                .map(|(k, m)| (k.clone(), m.clone()))
                .collect(),
            witnesses: self.witnesses.clone(),
        }
    }
}

/// `name^k`, with `name` for `k = 1` and nothing for `k = 0`.
fn power(name: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn join(parts: &[String]) -> String {
    parts
        .iter()
        .filter(|p| !p.is_empty() && p.as_str() != "1")
        .cloned()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Definitions built so far, with their values.
#[derive(Clone)]
struct Recipe {
    defs: Vec<Definition>,
    values: BTreeMap<String, MatrixQ>,
    fresh: usize,
}

impl Recipe {
    fn get(&self, name: &str) -> &MatrixQ {
        &self.values[name]
    }

    fn define(&mut self, name: &str, expr: String, m: MatrixQ) -> String {
        self.defs.push(Definition {
            name: name.to_string(),
            expr,
        });
        self.values.insert(name.to_string(), m);
        name.to_string()
    }

    fn helper(&mut self, expr: String, m: MatrixQ) -> String {
        self.fresh += 1;
        let name = format!("w{}", self.fresh);
        self.define(&name, expr, m)
    }

    /// Defines `a^m b^n`, unless that is just `a`.
    fn combine(&mut self, a: &str, m: i64, b: &str, n: i64) -> Result<String> {
        if m == 1 && n == 0 {
            return Ok(a.to_string());
        }
        let value = self.get(a).pow(m)?.mul(&self.get(b).pow(n)?)?;
        Ok(self.helper(join(&[power(a, m), power(b, n)]), value))
    }
}

fn entry(m: &MatrixQ, i: usize, j: usize) -> &Rational {
    m.get(i, j)
}

/// Integers `(m, n)` with `m·p + n·q = 0`, both fitting in `i64`.
fn kill(p: &Rational, q: &Rational) -> Option<(i64, i64)> {
    let (m, n) = cancelling_pair(p, q)?;
    Some((m.to_i64()?, n.to_i64()?))
}

fn is_label(m: &MatrixQ, gram: &AntiDiagonalGram, label: RootLabel) -> bool {
    classify_unipotent(m, gram) == Ok(label)
}

/// Turns two seeds in `U` into highest, second-highest and short-simple
/// witnesses by cancelling entries with exactly solved exponents.
fn complete_from_seeds(
    recipe: &mut Recipe,
    seeds: [&str; 2],
    gram: &AntiDiagonalGram,
) -> Result<Option<[String; 3]>> {
    // Clear the long-simple entry with powers of P.
    let mut in_v = Vec::new();
    for s in seeds {
        let w = recipe.get(s).clone();
        let name = if entry(&w, 1, 2).is_zero() {
            s.to_string()
        } else {
            let Some((m, n)) = kill(entry(&w, 1, 2), entry(recipe.get("P"), 1, 2)) else {
                continue;
            };
            recipe.combine(s, m, "P", n)?
        };
        in_v.push(name);
    }

    let mut x = None;
    let mut candidates: Vec<(String, String)> = Vec::new();
    for i in 0..in_v.len() {
        for j in i + 1..in_v.len() {
            candidates.push((in_v[i].clone(), in_v[j].clone()));
        }
    }
    candidates.extend(in_v.iter().map(|a| (a.clone(), "P".to_string())));
    for (a, b) in candidates {
        let c = MatrixQ::commutator(recipe.get(&a), recipe.get(&b))?;
        if is_label(&c, gram, RootLabel::Highest) {
            x = Some(recipe.define("x", format!("[{a},{b}]"), c));
            break;
        }
    }
    let Some(x) = x else { return Ok(None) };
    let x03 = entry(recipe.get(&x), 0, 3).clone();

    let Some(s) = in_v
        .iter()
        .find(|n| !entry(recipe.get(n), 0, 1).is_zero())
        .cloned()
    else {
        return Ok(None);
    };

    let mut z = None;
    let sp = MatrixQ::commutator(recipe.get(&s), recipe.get("P"))?;
    let mut pool: Vec<Option<String>> = in_v.iter().cloned().map(Some).collect();
    pool.push(None);
    for t in pool {
        let mut trial = recipe.clone();
        let t = match t {
            Some(t) => t,
            None => trial.helper(format!("[{s},P]"), sp.clone()),
        };
        let tm = trial.get(&t).clone();
        let w = if entry(&tm, 0, 1).is_zero() {
            t
        } else {
            let Some((m, n)) = kill(entry(&tm, 0, 1), entry(trial.get(&s), 0, 1)) else {
                continue;
            };
            if t == s {
                continue;
            }
            trial.combine(&t, m, &s, n)?
        };
        let wm = trial.get(&w).clone();
        if entry(&wm, 0, 2).is_zero() && entry(&wm, 1, 3).is_zero() {
            continue;
        }
        let (m, n) = if entry(&wm, 0, 3).is_zero() {
            (1, 0)
        } else {
            match kill(entry(&wm, 0, 3), &x03) {
                Some(mn) => mn,
                None => continue,
            }
        };
        let value = wm.pow(m)?.mul(&trial.get(&x).pow(n)?)?;
        if is_label(&value, gram, RootLabel::SecondHighest) {
            let name = trial.define("z", join(&[power(&w, m), power(&x, n)]), value);
            *recipe = trial;
            z = Some(name);
            break;
        }
    }
    let Some(z) = z else { return Ok(None) };

    let sm = recipe.get(&s).clone();
    let zm = recipe.get(&z).clone();
    let pos = if !entry(&sm, 0, 2).is_zero() {
        Some((0, 2))
    } else if !entry(&sm, 1, 3).is_zero() {
        Some((1, 3))
    } else {
        None
    };
    let w = match pos {
        None => s.clone(),
        Some((i, j)) => {
            let Some((m, n)) = kill(entry(&sm, i, j), entry(&zm, i, j)) else {
                return Ok(None);
            };
            recipe.combine(&s, m, &z, n)?
        }
    };
    let wm = recipe.get(&w).clone();
    let xm = recipe.get(&x).clone();
    let mut tries: Vec<i64> = Vec::new();
    if let Some((m, _)) = kill(entry(&wm, 0, 3), &x03) {
        tries.push(m);
    }
    tries.extend(1..=12);
    for k in tries {
        let r = wm.pow(k)?;
        let ratio = entry(&r, 0, 3) / &x03;
        if !ratio.is_integer() {
            continue;
        }
        let Some(n) = (-ratio).to_integer().to_i64() else {
            continue;
        };
        let value = r.mul(&xm.pow(n)?)?;
        if is_label(&value, gram, RootLabel::ShortSimple) {
            let y = recipe.define("y", join(&[power(&w, k), power(&x, n)]), value);
            return Ok(Some([x, y, z]));
        }
    }
    Ok(None)
}

/// `0, 1, -1, 2, -2, …` up to `budget` in absolute value.
fn signed_range(budget: u32) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=i64::from(budget)).flat_map(|a| [a, -a]))
}

/// Pairs `(a, b)` with `max(|a|, |b|) = r`, in a fixed order.
fn shell(r: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in signed_range(r as u32) {
        for b in signed_range(r as u32) {
            if a.abs().max(b.abs()) == r {
                out.push((a, b));
            }
        }
    }
    out
}

/// Witness derivation with every template; see [`derive_witnesses_with`].
pub fn derive_witnesses(
    t: &MonodromyTriple,
    form: &SymplecticForm,
    basis: &SymplecticBasis,
    gamma: &GroupWord,
    template_budget: u32,
) -> Result<Derivation> {
    derive_witnesses_with(t, form, basis, gamma, template_budget, &ALL_TEMPLATES)
}

/// Works in the coordinates `(ε₁, ε₂, ε₂*, ε₁*)` of `basis` with `P = C`,
/// `Q = γ⁻¹Cγ`, `R = γCγ⁻¹`. Each template is scanned over parameters with
/// absolute value at most `template_budget`; a hit whose seeds lie in `U`
/// is completed to a full set of witnesses when possible. The first complete
/// recipe is returned, otherwise the one with the widest coverage.
pub fn derive_witnesses_with(
    t: &MonodromyTriple,
    form: &SymplecticForm,
    basis: &SymplecticBasis,
    gamma: &GroupWord,
    template_budget: u32,
    templates: &[TemplateKind],
) -> Result<Derivation> {
    let gram = verify_basis(form, basis)?;
    if templates.is_empty() {
        return Ok(Derivation::default());
    }
    let g = to_basis_coords(&evaluate_word(t, gamma), basis)?;
    let g_inv = g.inverse()?;
    let p = to_basis_coords(&t.c, basis)?;

    let mut base = Recipe {
        defs: Vec::new(),
        values: BTreeMap::new(),
        fresh: 0,
    };
    let gs = gamma.to_string();
    let gi = gamma.inverse().to_string();
    base.define("P", "C".into(), p.clone());
    base.define(
        "Q",
        join(&[gi.clone(), "C".into(), gs.clone()]),
        g_inv.mul(&p)?.mul(&g)?,
    );
    base.define("R", join(&[gs, "C".into(), gi]), g.mul(&p)?.mul(&g_inv)?);
    let q = base.get("Q").clone();
    let r = base.get("R").clone();
    let q_inv = q.inverse()?;
    let p_inv = p.inverse()?;

    let mut best = Derivation {
        coverage: coverage(std::slice::from_ref(&p), &gram),
        ..Derivation::default()
    };
    let budget = template_budget.min(4096);

    let mut attempt = |recipe: Recipe, seeds: [&str; 2], hit: TemplateHit| -> Result<bool> {
        let mut recipe = recipe;
        let done = complete_from_seeds(&mut recipe, seeds, &gram)?;
        let mut names = vec!["P".to_string()];
        match &done {
            Some(xyz) => names.extend(xyz.iter().cloned()),
            None => names.extend(seeds.iter().map(|s| s.to_string())),
        }
        let mats: Vec<MatrixQ> = names.iter().map(|n| recipe.get(n).clone()).collect();
        let cov = coverage(&mats, &gram);
        if cov.found.len() > best.coverage.found.len()
            || best.template.is_none() && !cov.found.is_empty()
        {
            let witnesses = names
                .iter()
                .zip(&mats)
                .filter_map(|(n, m)| {
                    let root = classify_unipotent(m, &gram).ok()?;
                    RootLabel::POSITIVE.contains(&root).then(|| Witness {
                        name: n.clone(),
                        root,
                    })
                })
                .collect();
            best = Derivation {
                coverage: cov,
                template: Some(hit),
                definitions: recipe.defs.clone(),
                witnesses,
                values: recipe.values.clone(),
            };
        }
        Ok(best.coverage.complete())
    };

    for &kind in templates {
        match kind {
            TemplateKind::Conjugated | TemplateKind::Reflected => {
                for a in signed_range(budget) {
                    let (pa, pma) = (p.pow(a)?, p_inv.pow(a)?);
                    let seed = if kind == TemplateKind::Conjugated {
                        pa.mul(&r)?.mul(&pma)?.mul(&q_inv)?
                    } else {
                        q_inv.mul(&pma)?.mul(&r)?.mul(&pa)?
                    };
                    if !is_in_u(&seed, &gram) || seed.is_identity() {
                        continue;
                    }
                    let mut recipe = base.clone();
                    let (s1, s2) = if kind == TemplateKind::Conjugated {
                        ("S", "T")
                    } else {
                        ("E", "F")
                    };
                    let expr = if kind == TemplateKind::Conjugated {
                        join(&[power("P", a), "R".into(), power("P", -a), "Q^-1".into()])
                    } else {
                        join(&["Q^-1".into(), power("P", -a), "R".into(), power("P", a)])
                    };
                    recipe.define(s1, expr, seed.clone());
                    recipe.define(s2, format!("P {s1} P^-1"), p.mul(&seed)?.mul(&p_inv)?);
                    let hit = TemplateHit {
                        kind,
                        a,
                        b: None,
                        family: None,
                    };
                    if attempt(recipe, [s1, s2], hit)? {
                        return Ok(best);
                    }
                }
            }
            TemplateKind::Commutator => {
                for radius in 0..=i64::from(budget) {
                    for (a, b) in shell(radius) {
                        for family in [0u8, 1] {
                            let (first, second) = if family == 0 { (&r, &q) } else { (&q, &r) };
                            let s = p.pow(a)?.mul(first)?.mul(&p.pow(b)?)?.mul(second)?;
                            let e = MatrixQ::commutator(&r, &s)?;
                            if !is_in_u(&e, &gram) || e.is_identity() {
                                continue;
                            }
                            let f = q.mul(&e)?.mul(&q_inv)?;
                            if !is_in_u(&f, &gram) {
                                continue;
                            }
                            let mut recipe = base.clone();
                            let (n1, n2) = if family == 0 { ("R", "Q") } else { ("Q", "R") };
                            recipe.define(
                                "S",
                                join(&[power("P", a), n1.into(), power("P", b), n2.into()]),
                                s,
                            );
                            recipe.define("E", "[R,S]".into(), e);
                            recipe.define("F", "Q E Q^-1".into(), f);
                            let hit = TemplateHit {
                                kind,
                                a,
                                b: Some(b),
                                family: Some(family),
                            };
                            if attempt(recipe, ["E", "F"], hit)? {
                                return Ok(best);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(best)
}

/// `(γ·v)₄` when it is a nonzero integer of absolute value at most 2.
pub fn satisfies_gamma_condition(t: &MonodromyTriple, gamma: &GroupWord) -> Option<BigInt> {
    let w: VectorQ = evaluate_word(t, gamma).mul_vec(&t.v).ok()?;
    let c = w[3].to_integer();
    (w[3].is_integer() && !c.is_zero() && c.abs() <= BigInt::from(2)).then_some(c)
}
