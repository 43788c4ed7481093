//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;

use parammp::config_space::{classify, make_frame, orderings, Frame, FrameMode, PatternKey, Side, Token};
use parammp::verification::{
    certify_separation, check_partition, check_strata, classify_oracle, continuity_probe, random_query,
    random_rational_query, seeded_rng, stratum_query, StratumSpec, DEFAULT_RANGE,
};
use parammp::{
    component_count, desingularize, plan, swap_case_a, swap_case_b, transposition_sequence, OrderingPair,
    PlanOptions, Query,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, || format!("took {spent:.2?}, budget {budget:?}"))
}

fn domain_count_general() -> Outcome {
    let start = Instant::now();
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 2)] {
        let top = 2 * n + m;
        let witnesses = check_strata(n, m, 3, FrameMode::Fixed, 3, 101).map_err(|e| e.to_string())?;
        let want: Vec<usize> = (1..=top).collect();
        ensure(witnesses.realized() == want && witnesses.out_of_range == 0, || {
            format!("(n,m)=({n},{m}): witnesses realize {:?}", witnesses.realized())
        })?;
        let random = check_partition(n, m, 3, FrameMode::Fixed, 10_000, 202).map_err(|e| e.to_string())?;
        ensure(random.out_of_range == 0 && random.realized().iter().all(|c| (1..=top).contains(c)), || {
            format!("(n,m)=({n},{m}): random queries out of range: {random:?}")
        })?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("every c in 1..=2n+m realized; 3 x 10^4 random queries in range ({:.2?})", start.elapsed()))
}

fn domain_count_even() -> Outcome {
    let start = Instant::now();
    let mut realized = BTreeSet::new();
    let witnesses = check_strata(1, 2, 2, FrameMode::ObstaclePair, 5, 303).map_err(|e| e.to_string())?;
    let random = check_partition(1, 2, 2, FrameMode::ObstaclePair, 10_000, 404).map_err(|e| e.to_string())?;
    realized.extend(witnesses.realized());
    realized.extend(random.realized());
    ensure(witnesses.out_of_range + random.out_of_range == 0, || "label out of range".into())?;
    let want: BTreeSet<usize> = [2, 3, 4].into();
    ensure(realized == want, || format!("realized {realized:?}"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("realized c = {realized:?} ({:.2?})", start.elapsed()))
}

fn component_counts() -> Outcome {
    let start = Instant::now();
    let a = component_count(2, 2);
    let b = component_count(5, 3);
    ensure(a == BigUint::from(288u32), || format!("(2,2) gave {a}"))?;
    ensure(b == BigUint::from(270_950_400u32), || format!("(5,3) gave {b}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("(2,2) = {a}, (5,3) = {b}"))
}

fn soundness_battery() -> Outcome {
    let start = Instant::now();
    let suites = [
        (1, 1, 3, FrameMode::Fixed),
        (1, 2, 3, FrameMode::Fixed),
        (2, 2, 3, FrameMode::Fixed),
        (2, 3, 4, FrameMode::ObstaclePair),
        (1, 2, 2, FrameMode::ObstaclePair),
    ];
    let mut rng = seeded_rng(505);
    let mut worst = f64::INFINITY;
    let mut total = 0;
    for (n, m, d, mode) in suites {
        for k in 0..100 {
            let q = random_query(&mut rng, n, m, d, DEFAULT_RANGE);
            let r = plan(&q, &PlanOptions::with_mode(mode)).map_err(|e| format!("{n},{m},{d},{mode} #{k}: {e}"))?;
            let cert = certify_separation(&r.path, 64);
            ensure(cert.pass, || format!("{n},{m},{d},{mode} #{k}: certificate failed: {:?}", cert.worst()))?;
            worst = worst.min(cert.certified_lower_bound);
            for i in 0..n {
                let e0 = r.path.position(i, 0.0).dist(&q.starts()[i]);
                let e1 = r.path.position(i, 1.0).dist(&q.goals()[i]);
                ensure(e0 <= 1e-9 && e1 <= 1e-9, || format!("{n},{m},{d},{mode} #{k}: endpoint error {e0} / {e1}"))?;
            }
            for s in 0..=32 {
                let snap = r.path.evaluate(s as f64 / 32.0).map_err(|e| e.to_string())?;
                let same = snap.obstacles.iter().zip(q.obstacles()).all(|(a, b)| {
                    a.0.iter().zip(&b.0).all(|(x, y)| x.to_bits() == y.to_bits())
                });
                ensure(same, || format!("{n},{m},{d},{mode} #{k}: obstacles moved"))?;
            }
            total += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{total} plans certified, smallest certified clearance {worst:.3e} ({:.2?})",
        start.elapsed()
    ))
}

/// Clearance for crossing the block of `o` computed directly from its definition.
fn eta_by_hand(q: &Query, robot: usize, obstacle: usize) -> f64 {
    let qo = q.obstacles()[obstacle][0];
    let qz = q.starts()[robot][0];
    let toward_lower = qz > qo;
    let mut eta = (qz - qo).abs();
    let others = q
        .starts()
        .iter()
        .chain(q.goals())
        .chain(q.obstacles().iter().filter(|o| o[0] != qo))
        .map(|p| p[0]);
    for v in others {
        if (toward_lower && v < qo) || (!toward_lower && v > qo) {
            eta = eta.min((v - qo).abs());
        }
    }
    for o in q.obstacles() {
        if o[0] == qo && *o != q.obstacles()[obstacle] {
            eta = eta.min(o.dist(&q.obstacles()[obstacle]));
        }
    }
    eta
}

fn elementary_motions() -> Outcome {
    let mut rng = seeded_rng(606);
    let frame: Frame<f64> = Frame::fixed(3);
    let (mut case_a, mut case_b, mut lifted) = (0, 0, 0);
    let mut worst_a: f64 = 0.0;
    let mut worst_b: f64 = 0.0;

    for _ in 0..200 {
        let t = rng.random_range(1..=3);
        let spec = StratumSpec { n: 3, m: 3, dim: 3, j: 6, t, mode: FrameMode::Fixed };
        let q = stratum_query(&mut rng, spec, DEFAULT_RANGE).map_err(|e| e.to_string())?;
        let pair = orderings(&q, &frame).map_err(|e| e.to_string())?;
        for w in pair.sigma.windows(2) {
            match (&w[0], &w[1]) {
                (Token::Start(i), Token::Start(j)) => {
                    let h = swap_case_a(&q, &frame, *i, *j).map_err(|e| e.to_string())?;
                    let two_r = (q.starts()[*j][0] - q.starts()[*i][0]).abs();
                    for k in 0..=64 {
                        let c = h.evaluate((1.0 + k as f64 / 64.0) / 3.0).map_err(|e| e.to_string())?;
                        let d = c.starts()[*i].dist(&c.starts()[*j]);
                        worst_a = worst_a.max((d - two_r).abs());
                    }
                    case_a += 1;
                }
                (Token::Start(i), Token::Block(b)) | (Token::Block(b), Token::Start(i)) => {
                    let side = if matches!(w[0], Token::Block(_)) { Side::Right } else { Side::Left };
                    let o = b[0];
                    let h = swap_case_b(&q, &frame, *i, o, side).map_err(|e| e.to_string())?;
                    let eta = eta_by_hand(&q, *i, o);
                    let s = if side == Side::Right { 1.0 } else { -1.0 };
                    let want = q.obstacles()[o].offset(frame.e(), -s * eta / 2.0);
                    let got = h.evaluate(1.0).map_err(|e| e.to_string())?.starts()[*i].clone();
                    worst_b = worst_b.max(got.dist(&want));
                    case_b += 1;
                }
                _ => {}
            }
        }
    }
    ensure(worst_a <= 1e-9, || format!("antipodal distance drifts by {worst_a:e}"))?;
    ensure(worst_b <= 1e-12, || format!("crossing endpoint off by {worst_b:e}"))?;

    for (n, m, d, mode) in [(1, 2, 3, FrameMode::Fixed), (2, 2, 3, FrameMode::Fixed), (2, 3, 4, FrameMode::ObstaclePair)] {
        for t in mode.min_domain()..=m {
            for j in 0..2 * n {
                for _ in 0..10 {
                    let q = stratum_query(&mut rng, StratumSpec { n, m, dim: d, j, t, mode }, DEFAULT_RANGE).map_err(|e| e.to_string())?;
                    let f = make_frame(&q, mode).map_err(|e| e.to_string())?;
                    let h = desingularize(&q, &f).map_err(|e| e.to_string())?;
                    let label = classify(h.target(), &f);
                    ensure(label.j == 2 * n && label.t == t, || {
                        format!("A({j},{t}) lifted to {label} for n={n}, m={m}")
                    })?;
                    lifted += 1;
                }
            }
        }
    }
    Ok(format!(
        "{case_a} turns (drift {worst_a:.1e}), {case_b} crossings (error {worst_b:.1e}), {lifted} lifts to j = 2n"
    ))
}

fn oracle_agreement() -> Outcome {
    let mut rng = seeded_rng(707);
    let shapes = [(1, 1, 2), (1, 2, 2), (2, 2, 2), (2, 3, 4), (3, 2, 3)];
    let mut mismatches = 0;
    let mut total = 0;
    let mut hit = BTreeSet::new();
    for k in 0..10_000 {
        let (n, m, d) = shapes[k % shapes.len()];
        let q = random_rational_query(&mut rng, n, m, d);
        let want = classify_oracle(&q, FrameMode::Fixed).map_err(|e| e.to_string())?;
        let exact = classify(&q, &Frame::fixed(d));
        let float_query: Query = q.convert(|x| num_traits::ToPrimitive::to_f64(x).unwrap()).map_err(|e| e.to_string())?;
        let float = classify(&float_query, &Frame::fixed(d));
        if exact != want || float != want {
            mismatches += 1;
        }
        hit.insert(want.c);
        total += 1;
        if d % 2 == 0 && m >= 2 && q.obstacles()[0] != q.obstacles()[1] {
            let want = classify_oracle(&q, FrameMode::ObstaclePair).map_err(|e| e.to_string())?;
            let f = Frame::exact_pair(&q.obstacles()[0], &q.obstacles()[1]).map_err(|e| e.to_string())?;
            if classify(&q, &f) != want {
                mismatches += 1;
            }
            total += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches in {total} comparisons"))?;
    Ok(format!("{total} comparisons on 10^4 rational queries, 0 mismatches, c values seen {hit:?}"))
}

fn continuity() -> Outcome {
    let mut rng = seeded_rng(808);
    let eps = [1e-2, 1e-3, 1e-4];
    let shapes = [(1, 1, 3, FrameMode::Fixed), (2, 2, 3, FrameMode::Fixed), (1, 2, 2, FrameMode::ObstaclePair), (2, 3, 4, FrameMode::ObstaclePair)];
    let mut done = 0;
    let mut inconclusive = 0;
    let mut largest: f64 = 0.0;
    while done < 20 {
        let (n, m, d, mode) = shapes[done % shapes.len()];
        let q = random_query(&mut rng, n, m, d, DEFAULT_RANGE);
        let options = PlanOptions::with_mode(mode);
        let dir: Vec<f64> = (0..q.to_flat().len()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dir: Vec<f64> = dir.iter().map(|x| x / norm).collect();
        // Pre-validate: every perturbation keeps the orderings.
        let frame = make_frame(&q, mode).map_err(|e| e.to_string())?;
        let base = orderings(&q, &frame).map_err(|e| e.to_string())?;
        let stays = eps.iter().all(|&e| {
            let moved: Vec<f64> = q.to_flat().iter().zip(&dir).map(|(x, v)| x + e * v).collect();
            let Ok(p) = q.from_flat(&moved) else { return false };
            let Ok(f) = make_frame(&p, mode) else { return false };
            orderings(&p, &f).is_ok_and(|o| o == base)
        });
        if !stays {
            continue;
        }
        match continuity_probe(&q, &dir, &eps, &options) {
            Ok(dv) => {
                ensure(dv[0] > dv[1] && dv[1] > dv[2], || format!("query {done}: D not decreasing: {dv:?}"))?;
                ensure(dv[2] <= 1e5 * 1e-4, || format!("query {done}: D(1e-4) = {}", dv[2]))?;
                largest = largest.max(dv[2]);
            }
            Err(e) => {
                inconclusive += 1;
                eprintln!("  query {done}: {e}");
            }
        }
        done += 1;
    }
    ensure(inconclusive == 0, || format!("{inconclusive} inconclusive probes"))?;
    Ok(format!("20 queries, D decreasing, max D(1e-4) = {largest:.3e}"))
}

/// All ordered partitions of `0..m` into blocks.
fn ordered_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let k = rest.len();
        for mask in 1..(1u32 << k) {
            let (block, left): (Vec<usize>, Vec<usize>) = (0..k).partition(|&b| mask & (1 << b) != 0);
            acc.push(block.iter().map(|&b| rest[b]).collect());
            go(&left.iter().map(|&b| rest[b]).collect::<Vec<_>>(), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(0..m).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Interleavings of `n` robots (in every order) with the blocks (in order).
fn arrangements(n: usize, blocks: &[Vec<usize>]) -> Vec<Vec<PatternKey>> {
    let len = n + blocks.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    permute(&mut perm, 0, &mut perms);
    for mask in 0..(1u32 << len) {
        if mask.count_ones() as usize != n {
            continue;
        }
        for p in &perms {
            let (mut r, mut b) = (0, 0);
            let seq = (0..len)
                .map(|k| {
                    if mask & (1 << k) != 0 {
                        r += 1;
                        PatternKey::Robot(p[r - 1])
                    } else {
                        b += 1;
                        PatternKey::Block(blocks[b - 1][0])
                    }
                })
                .collect();
            out.push(seq);
        }
    }
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Breadth-first distance over adjacent transpositions that move a robot.
fn bfs_distance(from: &[PatternKey], to: &[PatternKey]) -> usize {
    let mut seen: HashMap<Vec<PatternKey>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(from.to_vec(), 0);
    queue.push_back(from.to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = seen[&cur];
        if cur == to {
            return d;
        }
        for k in 0..cur.len() - 1 {
            if matches!((cur[k], cur[k + 1]), (PatternKey::Block(_), PatternKey::Block(_))) {
                continue;
            }
            let mut next = cur.clone();
            next.swap(k, k + 1);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("target unreachable")
}

fn tokens(keys: &[PatternKey], blocks: &[Vec<usize>], goal: bool) -> Vec<Token> {
    keys.iter()
        .map(|k| match *k {
            PatternKey::Robot(i) if goal => Token::Goal(i),
            PatternKey::Robot(i) => Token::Start(i),
            PatternKey::Block(o) => Token::Block(blocks.iter().find(|b| b[0] == o).unwrap().clone()),
        })
        .collect()
}

fn swap_minimality() -> Outcome {
    let mut pairs = 0usize;
    for n in 1..=4 {
        for m in 1..=5 - n {
            for blocks in ordered_partitions(m) {
                let arr = arrangements(n, &blocks);
                for a in &arr {
                    for b in &arr {
                        let pair = OrderingPair {
                            sigma: tokens(a, &blocks, false),
                            sigma_prime: tokens(b, &blocks, true),
                        };
                        let got = transposition_sequence(&pair).map_err(|e| e.to_string())?.len();
                        let want = bfs_distance(a, b);
                        ensure(got == want, || format!("{pair}: {got} swaps, shortest is {want}"))?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} ordering pairs with n + m <= 5 match the shortest distance"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("domain count, fixed frame", domain_count_general),
        ("domain count, obstacle-pair frame", domain_count_even),
        ("component counts", component_counts),
        ("soundness battery", soundness_battery),
        ("elementary motion exactness", elementary_motions),
        ("oracle agreement", oracle_agreement),
        ("continuity probe", continuity),
        ("swap sequence minimality", swap_minimality),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
