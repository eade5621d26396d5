//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use cuspidal_core::arith::{ratio, solve_rational};
use cuspidal_core::hnpairs::{fibonacci_bound_holds, graph_type_of};
use cuspidal_core::invariants::{bark_of_chain, first_branch_contribution};
use cuspidal_core::num_bigint::BigInt;
use cuspidal_core::search::{family_system, case_systems, FinalSearchParams};
use cuspidal_core::{
    build_resolution_graph, cusp_invariants, degree_equation_residuals, enumerate_chains,
    final_search, inductance, lemma22_deltas, simulate_germ, solve_linear_quadratic, BlowupCenter,
    CharPairSeq, Chain, ComponentId, CurveCandidate, DualGraph, MarkedResolution, Rational,
    Solution,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use common::{all_chains, brute_force, continuant, random_pairs, twos_then};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fib(n: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// The printed table of contractible chains of type (r), without the leading (-2)-curves.
fn printed_table() -> BTreeMap<u32, Vec<Vec<i64>>> {
    BTreeMap::from([
        (0, vec![vec![1]]),
        (1, vec![vec![3, 1, 2]]),
        (2, vec![vec![4, 1, 2, 2], vec![3, 2, 1, 3]]),
        (
            3,
            vec![
                vec![5, 1, 2, 2, 2],
                vec![4, 2, 1, 3, 2],
                vec![3, 3, 1, 2, 3],
                vec![3, 2, 2, 1, 4],
            ],
        ),
        (
            4,
            vec![
                vec![6, 1, 2, 2, 2, 2],
                vec![5, 2, 1, 3, 2, 2],
                vec![4, 3, 1, 2, 3, 2],
                vec![4, 2, 2, 1, 4, 2],
                vec![3, 4, 1, 2, 2, 3],
                vec![3, 3, 2, 1, 3, 3],
                vec![3, 2, 3, 1, 2, 4],
                vec![3, 2, 2, 2, 1, 5],
            ],
        ),
    ])
}

fn criterion_1() -> Check {
    let table = printed_table();
    let mut total = 0;
    for (&r, tails) in &table {
        let expected_count = [1, 1, 2, 4, 8][r as usize];
        ensure(tails.len() == expected_count, || format!("table for r={r} has {} rows", tails.len()))?;
        let expected: BTreeSet<Vec<i64>> = (0..=3)
            .flat_map(|k| tails.iter().map(move |t| twos_then(k, t)))
            .collect();
        let got: BTreeSet<Vec<i64>> = enumerate_chains(r, 3)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|c| c.weights().to_vec())
            .collect();
        ensure(got == expected, || format!("r={r}: got {got:?}, expected {expected:?}"))?;
        total += got.len();
    }
    Ok(format!("r=0..4, k=0..3: {total} chains, set equality"))
}

/// A chain with the multiplicity of each curve in the total transform of the point.
#[derive(Clone)]
struct Tower {
    w: Vec<i64>,
    m: Vec<u64>,
    u: usize,
}

impl Tower {
    fn seed(k: usize) -> Tower {
        Tower {
            w: twos_then(k + 1, &[1]),
            m: vec![1; k + 2],
            u: k + 1,
        }
    }

    /// Blows up the point where the (-1)-curve meets its neighbor at `j`.
    fn inner(&self, j: usize) -> Tower {
        let mut t = self.clone();
        let pos = self.u.max(j);
        t.w[self.u] += 1;
        t.w[j] += 1;
        t.w.insert(pos, 1);
        t.m.insert(pos, self.m[self.u] + self.m[j]);
        t.u = pos;
        t
    }

    fn neighbors(&self) -> Vec<usize> {
        let mut n = Vec::new();
        if self.u > 0 {
            n.push(self.u - 1);
        }
        if self.u + 1 < self.w.len() {
            n.push(self.u + 1);
        }
        n
    }
}

fn criterion_2() -> Check {
    // Family obtained by always blowing up U at its corner with the heavier neighbor.
    let mut family: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for k in 0..=3 {
        family.insert(twos_then(k, &[1]), 1);
        let first = Tower::seed(k);
        let mut frontier = vec![first.inner(first.neighbors()[0])];
        for r in 1..=4 {
            for t in &frontier {
                family.insert(t.w.clone(), t.m[t.u]);
            }
            if r == 4 {
                break;
            }
            let mut next = Vec::new();
            for t in &frontier {
                let nbrs = t.neighbors();
                let heaviest = nbrs.iter().map(|&j| t.m[j]).max().expect("two neighbors");
                for &j in nbrs.iter().filter(|&&j| t.m[j] == heaviest) {
                    next.push(t.inner(j));
                }
            }
            frontier = next;
        }
    }
    let mut tight = BTreeSet::new();
    let mut checked = 0;
    for r in 0..=4 {
        for c in enumerate_chains(r, 3).map_err(|e| e.to_string())? {
            let w = c.weights().to_vec();
            let m = MarkedResolution::from_graph(c.to_graph()).map_err(|e| e.to_string())?;
            // mu from the total transform: Q z = -e_first, where id 0 is the first curve
            let q = m.graph.intersection_matrix();
            let mut rhs = vec![Rational::zero(); w.len()];
            rhs[0] = -Rational::one();
            let z = solve_rational(&q, &rhs).map_err(|e| e.to_string())?;
            let idx = m.graph.index_map()[&m.minus_one];
            ensure(z[idx] == Rational::from_integer(m.mu.clone()), || {
                format!("{w:?}: mu {} but total transform gives {}", m.mu, z[idx])
            })?;
            let kq: i64 = w.iter().map(|a| a - 2).sum();
            ensure(kq == r as i64 - 1, || format!("{w:?}: K.Q = {kq}"))?;
            let bound = fib(kq + 3);
            ensure(m.mu <= bound, || format!("{w:?}: mu {} exceeds F_{}", m.mu, kq + 3))?;
            ensure(fibonacci_bound_holds(&m) == Ok(true), || format!("{w:?}: library disagrees"))?;
            if m.mu == bound {
                tight.insert(w.clone());
            }
            if let Some(&fm) = family.get(&w) {
                ensure(BigInt::from(fm) == m.mu, || format!("{w:?}: simulated mu {fm}"))?;
            }
            checked += 1;
        }
    }
    let family_set: BTreeSet<Vec<i64>> = family.keys().cloned().collect();
    ensure(tight == family_set, || {
        format!("tight set {tight:?} differs from heavier-neighbor family {family_set:?}")
    })?;
    for w in [vec![1], vec![3, 1, 2], vec![4, 1, 2, 2]] {
        ensure(tight.contains(&w), || format!("{w:?} is not tight"))?;
    }
    Ok(format!(
        "{checked} chains bounded, {} tight, equal to the heavier-neighbor family",
        tight.len()
    ))
}

fn witness_pairs() -> Vec<(u64, u64)> {
    let mut p = vec![(9, 6)];
    p.extend(std::iter::repeat((3, 3)).take(8));
    p.push((3, 1));
    p
}

fn criterion_3() -> Check {
    let pairs = CharPairSeq::new(witness_pairs()).map_err(|e| e.to_string())?;
    let inv = cusp_invariants(&pairs);
    // by hand: M = 9 + 6 + 8*3 + 1 - 1, I = 54 + 8*9 + 3
    ensure(inv.m == BigInt::from(39) && inv.i == BigInt::from(129), || {
        format!("M={}, I={}", inv.m, inv.i)
    })?;
    let cand = CurveCandidate::unicuspidal(11, 8, pairs, 1).map_err(|e| e.to_string())?;
    let r = degree_equation_residuals(&cand);
    ensure(r.all_zero(), || format!("residuals {:?}", r))?;
    Ok("M=39, I=129, residuals (0,0,0)".into())
}

struct HandSystem {
    name: &'static str,
    a0: i64,
    b: Vec<i64>,
    q0: i64,
    bq: Vec<i64>,
    expected: Vec<(i64, Vec<i64>)>,
}

/// Coefficients worked out by hand from the pairs, `rho` and `gamma` of each family.
fn hand_systems() -> Vec<HandSystem> {
    let s = |name, a0, b: &[i64], q0, bq: &[i64], expected: Vec<(i64, Vec<i64>)>| HandSystem {
        name,
        a0,
        b: b.to_vec(),
        q0,
        bq: bq.to_vec(),
        expected,
    };
    vec![
        s("type (1,1,1)", 23, &[3, 1], 105, &[15, 3], vec![(12, vec![0, 13])]),
        s("type (2,1) a", 16, &[5, 1], 50, &[35, 3], vec![(11, vec![1, 12])]),
        s("type (2,1) b", 18, &[5, 1], 62, &[35, 3], vec![]),
        s("type (1,2) (3,2)", 18, &[5, 2], 60, &[35, 8], vec![]),
        s(
            "type (1,2) (3,1)",
            17,
            &[5, 2],
            57,
            &[35, 8],
            vec![(11, vec![0, 8]), (16, vec![5, 3])],
        ),
        s("type (3) (4k+5,4)", 11, &[3], 21, &[15], vec![]),
        s("type (3) (5k+7,5)", 14, &[4], 36, &[24], vec![]),
        s("type (3) (5k+8,5)", 15, &[4], 41, &[24], vec![]),
        s("type (3) (4k+7,4)", 13, &[3], 29, &[15], vec![]),
        s("(3,2) and (4k+7,4)", 14, &[3], 32, &[15], vec![]),
    ]
}

fn criterion_4() -> Check {
    let families = case_systems();
    let hand = hand_systems();
    ensure(families.len() == hand.len(), || "system count".into())?;
    for (fam, h) in families.iter().zip(&hand) {
        let sys = family_system(&fam.family, 1).map_err(|e| e.to_string())?;
        let as_big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        ensure(
            sys.linear_const == BigInt::from(h.a0)
                && sys.linear == as_big(&h.b)
                && sys.quadratic_const == BigInt::from(h.q0)
                && sys.quadratic == as_big(&h.bq),
            || format!("{}: derived system {sys:?} differs from hand derivation", h.name),
        )?;
        let got = solve_linear_quadratic(&sys);
        let expected: Vec<Solution> = h.expected.iter().map(|(d, k)| Solution::from_i64(*d, k)).collect();
        ensure(got == expected, || format!("{}: solver gave {got:?}", h.name))?;
        ensure(fam.expected == expected, || format!("{}: library expectation differs", h.name))?;
        // the brute force box must contain the solver's search region
        let d_max = sys.d_bound().map(|d| i64::try_from(d).unwrap()).unwrap_or(0);
        let b_min = *h.b.iter().min().unwrap();
        ensure(d_max <= 200 && (3 * d_max - h.a0) / b_min <= 600, || {
            format!("{}: search region exceeds the brute force box", h.name)
        })?;
        let naive = brute_force(h.a0, &h.b, h.q0, &h.bq, 1, 200, 600);
        ensure(naive == h.expected, || format!("{}: brute force gave {naive:?}", h.name))?;
    }
    Ok(format!("{} systems match stated sets and brute force", hand.len()))
}

#[derive(Deserialize, PartialEq, Eq, Debug, Clone, PartialOrd, Ord)]
struct GoldenRow {
    gamma: i64,
    p: i64,
    d: i64,
    c: i64,
    r: i64,
    gcd: i64,
}

fn criterion_5() -> Check {
    let golden: Vec<GoldenRow> =
        serde_json::from_str(include_str!("golden/final_search.json")).map_err(|e| e.to_string())?;
    // brute force over d with exact integer arithmetic
    let mut naive = Vec::new();
    for gamma in 6..=14i64 {
        for p in 2..=13i64 {
            for d in 6..=1000i64 {
                if d * d - 3 * p * d == (gamma - p - 1) * p - gamma {
                    let c = 3 * d + gamma - p - 1;
                    naive.push(GoldenRow {
                        gamma,
                        p,
                        d,
                        c,
                        r: c % p,
                        gcd: num_integer::gcd(c, p),
                    });
                }
            }
        }
    }
    naive.sort();
    ensure(naive == golden, || "golden file differs from brute force".into())?;
    let res = final_search(FinalSearchParams::default()).map_err(|e| e.to_string())?;
    let got: Vec<GoldenRow> = res
        .solutions
        .iter()
        .map(|s| GoldenRow {
            gamma: s.gamma,
            p: s.p,
            d: i64::try_from(&s.d).unwrap(),
            c: i64::try_from(&s.c).unwrap(),
            r: i64::try_from(&s.r).unwrap(),
            gcd: i64::try_from(&s.gcd).unwrap(),
        })
        .collect();
    ensure(got == golden, || format!("final_search gave {got:?}"))?;
    ensure(!got.is_empty(), || "no solutions".into())?;
    for (row, s) in golden.iter().zip(&res.solutions) {
        // (c-p)/c + (p-r)/p + 1/gamma <= 1, cleared of denominators
        let (c, p, r, g) = (row.c, row.p, row.r, row.gamma);
        let holds = (c - p) * p * g + (p - r) * c * g + c * p <= c * p * g;
        ensure(!holds && !s.passes_gamma_final, || format!("{row:?} satisfies the gamma bound"))?;
        // substitution back into the first two degree equations with M = c+p-1, I = cp
        let r1 = g - 2 + 3 * row.d - (c + p - 1);
        let r2 = g + row.d * row.d - c * p;
        ensure(r1 == 0 && r2 == 0, || format!("{row:?}: residuals {r1}, {r2}"))?;
    }
    Ok(format!("{} solutions, all fail the gamma bound, golden file confirmed", golden.len()))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2022);
    let mut seen = BTreeSet::new();
    let mut cases = 0;
    while seen.len() < 150 {
        let s = random_pairs(&mut rng, 3, 60);
        if !seen.insert(s.pairs().to_vec()) {
            continue;
        }
        let (m, steps) = simulate_germ(&s).map_err(|e| e.to_string())?;
        let q = m.graph.intersection_matrix();
        let n = m.graph.len();
        let idx = m.graph.index_map()[&m.minus_one];
        // K = pi^*K + sum k_i E_i with K.E_j = -2 - E_j^2
        let rhs_k: Vec<Rational> = m
            .graph
            .components()
            .map(|c| Rational::from_integer(BigInt::from(-2 - c.self_int)))
            .collect();
        let k = solve_rational(&q, &rhs_k).map_err(|e| e.to_string())?;
        // pullback of a curvette through U: Q m = -e_U
        let mut rhs_m = vec![Rational::zero(); n];
        rhs_m[idx] = -Rational::one();
        let pull = solve_rational(&q, &rhs_m).map_err(|e| e.to_string())?;
        let sum_mult: BigInt = steps.iter().map(|b| BigInt::from(b.mult)).sum();
        let sum_sq: BigInt = steps.iter().map(|b| BigInt::from(b.mult) * b.mult).sum();
        for t in 1..=3u64 {
            let (dk, ds) = lemma22_deltas(&s, t);
            let tb = BigInt::from(t);
            let dk_graph = &k[idx] * Rational::from_integer(tb.clone());
            let ds_graph = &pull[idx] * Rational::from_integer(&tb * &tb);
            ensure(
                Rational::from_integer(dk.clone()) == dk_graph && dk == &tb * &sum_mult,
                || format!("{s} t={t}: deltaK {dk}, graph {dk_graph}, blowups {}", &tb * &sum_mult),
            )?;
            ensure(
                Rational::from_integer(ds.clone()) == ds_graph && ds == &tb * &tb * &sum_sq,
                || format!("{s} t={t}: deltaSelf {ds}, graph {ds_graph}"),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{} sequences, {cases} (sequence, t) cases match", seen.len()))
}

fn random_graph<R: Rng>(rng: &mut R, n: usize, self_range: std::ops::RangeInclusive<i64>, max_mult: u32) -> DualGraph {
    let mut g = DualGraph::new();
    let ids: Vec<ComponentId> = (0..n).map(|_| g.add_component(rng.gen_range(self_range.clone()), None)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                g.add_edge(ids[i], ids[j], rng.gen_range(1..=max_mult)).unwrap();
            }
        }
    }
    for &id in &ids {
        if rng.gen_bool(0.1) {
            g.set_genus_defect(id, 1).unwrap();
        }
    }
    g
}

/// Random graph obtained from a single (-1)-curve by `n - 1` blowups.
fn random_tower<R: Rng>(rng: &mut R, n: usize) -> DualGraph {
    let mut g = DualGraph::new();
    g.add_component(-1, None);
    while g.len() < n {
        let ids = g.ids();
        let edges: Vec<(ComponentId, ComponentId, u32)> = g.edges().collect();
        let center = if !edges.is_empty() && rng.gen_bool(0.5) {
            let (a, b, _) = edges[rng.gen_range(0..edges.len())];
            BlowupCenter::Edge(a, b)
        } else {
            BlowupCenter::Node(ids[rng.gen_range(0..ids.len())])
        };
        g = g.blowup(center).unwrap().0;
    }
    g
}

/// Every possible outcome of contracting (-1)-curves in every order until none is left.
fn contraction_outcomes(g: &DualGraph, memo: &mut BTreeMap<String, BTreeSet<bool>>) -> BTreeSet<bool> {
    if g.is_empty() {
        return BTreeSet::from([true]);
    }
    let key = format!("{g:?}");
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let candidates: Vec<ComponentId> = g
        .components()
        .filter(|c| c.self_int == -1 && c.genus_defect == 0)
        .map(|c| c.id)
        .collect();
    let mut out = BTreeSet::new();
    if candidates.is_empty() {
        out.insert(false);
    }
    for id in candidates {
        let h = g.blowdown(id).unwrap();
        out.extend(contraction_outcomes(&h, memo));
    }
    memo.insert(key, out.clone());
    out
}

fn criterion_7() -> Check {
    // discriminant: determinant, recursion and machine continuant
    let chains = all_chains(1, 8, 2..=5);
    for w in &chains {
        let c = Chain::new(w.clone());
        let det = c.discriminant();
        ensure(det == c.discriminant_recursive() && det == BigInt::from(continuant(w)), || {
            format!("{w:?}: discriminants disagree")
        })?;
    }
    // inductance and bark identities
    let short = all_chains(1, 6, 2..=5);
    for w in &short {
        let c = Chain::new(w.clone());
        let ind = inductance(&c).map_err(|e| e.to_string())?;
        let tail = Chain::new(w[1..].to_vec());
        let expected = Rational::from_integer(tail.discriminant()) / Rational::from_integer(c.discriminant());
        ensure(ind == expected, || format!("{w:?}: ind is not d(T - tip)/d(T)"))?;
        let ind_tail = inductance(&tail).map_err(|e| e.to_string())?;
        let cf = (Rational::from_integer(BigInt::from(w[0])) - ind_tail).recip();
        ensure(ind == cf, || format!("{w:?}: continued fraction identity fails"))?;
        if w.len() < 6 {
            for a in 2..=5 {
                let mut longer = w.clone();
                longer.push(a);
                let ind_long = inductance(&Chain::new(longer.clone())).map_err(|e| e.to_string())?;
                ensure(ind <= ind_long, || format!("{w:?} -> {longer:?}: inductance decreases"))?;
            }
        }
        let bk = bark_of_chain(&c).map_err(|e| e.to_string())?;
        let mut sq = Rational::zero();
        for i in 0..w.len() {
            sq -= &bk[i] * &bk[i] * Rational::from_integer(BigInt::from(w[i]));
            if i + 1 < w.len() {
                sq += &bk[i] * &bk[i + 1] * ratio(2, 1);
            }
        }
        ensure(sq == -ind.clone(), || format!("{w:?}: bark squared is {sq}, ind {ind}"))?;
    }
    // blowup then blowdown
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut round_trips = 0;
    while round_trips < 300 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, -5..=2, 3);
        let edges: Vec<_> = g.edges().collect();
        let center = if !edges.is_empty() && rng.gen_bool(0.5) {
            let (a, b, _) = edges[rng.gen_range(0..edges.len())];
            BlowupCenter::Edge(a, b)
        } else {
            BlowupCenter::Node(g.ids()[rng.gen_range(0..n)])
        };
        let (h, new) = g.blowup(center).map_err(|e| e.to_string())?;
        ensure(h.blowdown(new).as_ref() == Ok(&g), || format!("round trip fails on {g:?}"))?;
        round_trips += 1;
    }
    // contraction order independence
    let mut graphs = 0;
    let mut memo = BTreeMap::new();
    for i in 0..400 {
        let n = rng.gen_range(1..=8);
        let mut g = if i % 2 == 0 {
            random_tower(&mut rng, n)
        } else {
            random_graph(&mut rng, n, -3..=-1, 2)
        };
        if i % 4 == 2 {
            let ids = g.ids();
            let id = ids[rng.gen_range(0..ids.len())];
            let c = g.component(id).unwrap().clone();
            g = DualGraph::from_parts(
                g.components().map(|x| {
                    let mut x = x.clone();
                    if x.id == id {
                        x.self_int = c.self_int - 1;
                    }
                    x
                }).collect::<Vec<_>>(),
                g.edges().collect::<Vec<_>>(),
            )
            .unwrap();
        }
        let outcomes = contraction_outcomes(&g, &mut memo);
        let greedy = g.contracts_to_smooth_point();
        ensure(outcomes.len() == 1 && outcomes.contains(&greedy), || {
            format!("{g:?}: orders give {outcomes:?}, greedy {greedy}")
        })?;
        if i % 2 == 0 && i % 4 != 2 {
            ensure(greedy, || format!("{g:?}: blowup tower does not contract"))?;
        }
        graphs += 1;
    }
    Ok(format!(
        "{} chains (recursion), {} chains (inductance, bark), {round_trips} round trips, {graphs} graphs (contraction orders)",
        chains.len(),
        short.len()
    ))
}

fn criterion_8() -> Check {
    for k in 0..=5u64 {
        let s = CharPairSeq::new(vec![(2 * k + 3, 2)]).map_err(|e| e.to_string())?;
        let m = build_resolution_graph(&s).map_err(|e| e.to_string())?;
        let expected = twos_then(k as usize, &[3, 1, 2]);
        let got = m.as_chain().map(|c| c.weights().to_vec());
        ensure(got.as_ref() == Some(&expected), || format!("k={k}: got {got:?}"))?;
        ensure(m.graph.contracts_to_smooth_point(), || format!("k={k}: not contractible"))?;
        ensure(m.graph.is_negative_definite(), || format!("k={k}: not negative definite"))?;
        let ty = graph_type_of(&m.graph).map_err(|e| e.to_string())?;
        ensure(ty.0 == vec![1], || format!("k={k}: type {ty}"))?;
        let contribution = first_branch_contribution(&m).map_err(|e| e.to_string())?;
        // twigs [2] and [(2)_k,3] read from the tip
        let k = k as i64;
        let expected_value = ratio(1, 2) + ratio(2 * k + 1, 2 * k + 3);
        ensure(contribution == expected_value, || format!("k={k}: contribution {contribution}"))?;
        ensure(contribution > ratio(1, 2), || format!("k={k}: contribution not above 1/2"))?;
    }
    Ok("k=0..5: [(2)_k,3,1,2], contractible, definite, type (1), contribution > 1/2".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("chain tables for r <= 4", criterion_1),
        ("Fibonacci bound and its tight cases", criterion_2),
        ("degree-11 witness", criterion_3),
        ("linear-quadratic case systems", criterion_4),
        ("final search", criterion_5),
        ("blowup deltas against germ simulation", criterion_6),
        ("exact calculus properties", criterion_7),
        ("semi-ordinary resolutions", criterion_8),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = f();
        let took = t.elapsed();
        match result {
            Ok(detail) => println!("criterion {} PASS {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
