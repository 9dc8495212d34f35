//! Reduced-size oracle-equivalence suites.

use allhops::baselines::{apah_brute, default_max_hop};
use allhops::graph::gen_random_graph;
use allhops::oracles::{
    build_oracle_bf, build_oracle_bounded, build_oracle_mn, build_oracle_mpp, build_oracle_powers, Oracle,
};
use allhops::reductions::{verify_convolution, verify_mpp, verify_tree, verify_triangle, Tripartite};
use allhops::sampling::SamplePlan;
use allhops::solvers::{all_pairs_allhops, default_levels, single_pair_allhops, single_source_allhops};
use allhops::{Error, Graph, Result};

type Suite = fn(u64) -> Result<()>;

fn graphs(seed: u64, count: u64) -> impl Iterator<Item = Result<Graph>> {
    (0..count).map(move |i| {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let n = 5 + (s % 20) as usize;
        gen_random_graph(n, n + (s as usize % (2 * n)), [1, 5, 100][i as usize % 3], s, true)
    })
}

fn mismatch(what: &str) -> Error {
    Error::Verification(format!("{what} disagrees with the reference"))
}

fn solvers(seed: u64) -> Result<()> {
    for g in graphs(seed, 12) {
        let g = g?;
        let n = g.n();
        let want = apah_brute(&g, default_max_hop(n));
        let plan = SamplePlan::new(4.0, seed);
        let k = default_levels(n);
        let got = all_pairs_allhops(&g, &plan)?;
        if got.rows.iter().zip(&want.rows).any(|(a, b)| a.le != b.le) {
            return Err(mismatch("all-pairs"));
        }
        for s in [0, n / 2] {
            if single_source_allhops(&g, s, k, &plan)?.le != want.rows[s].le {
                return Err(mismatch("single-source"));
            }
            let t = n - 1 - s;
            if single_pair_allhops(&g, s, t, k, &plan)? != want.rows[s].le_series(t) {
                return Err(mismatch("single-pair"));
            }
        }
    }
    Ok(())
}

fn oracles(seed: u64) -> Result<()> {
    for g in graphs(seed ^ 0x5eed, 6) {
        let g = g?;
        let n = g.n();
        let hops = default_max_hop(n);
        let want = apah_brute(&g, hops);
        let plan = SamplePlan::new(4.0, seed);
        let built: Vec<Oracle> = vec![
            build_oracle_powers(&g, hops)?,
            build_oracle_bf(&g, hops)?,
            build_oracle_mn(&g, &plan)?,
            build_oracle_mpp(&g, &plan)?,
            build_oracle_bounded(&g, &plan, None)?,
        ];
        for o in &built {
            for u in 0..n {
                for v in 0..n {
                    for h in 1..=hops {
                        if o.query(u, v, h)? != want.le(u, h, v) {
                            return Err(mismatch(o.kind.name()));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn gadgets(seed: u64) -> Result<()> {
    for ell in 1..=4 {
        verify_tree(ell)?;
    }
    for i in 0..8 {
        verify_triangle(&Tripartite::random(1 + i as usize, 0.3, seed + i))?;
    }
    let a = vec![vec![1, 2], vec![2, 1], vec![1, 1], vec![2, 2]];
    let b = vec![vec![2, 1, 1, 2], vec![1, 2, 1, 2]];
    verify_mpp(&a, &b, 2)?;
    let c: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| ((i * 7 + j * 3 + seed as i64) % 11) - 5).collect()).collect();
    verify_convolution(&c, &c)?;
    Ok(())
}

/// Runs every suite, printing one line each. `true` when all pass.
pub fn run(seed: u64, out: &mut impl std::io::Write) -> std::io::Result<bool> {
    let suites: [(&str, Suite); 3] = [("solvers", solvers), ("oracles", oracles), ("gadgets", gadgets)];
    let mut ok = true;
    for (name, suite) in suites {
        match suite(seed) {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(e) => {
                ok = false;
                writeln!(out, "FAIL {name}: {e}")?;
            }
        }
    }
    Ok(ok)
}
