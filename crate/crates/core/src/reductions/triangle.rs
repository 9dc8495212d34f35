use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::{bellman_ford_allhops, AllHopsRow};
use crate::error::{Error, Result};

use super::{Builder, GadgetGraph};

/// Tripartite graph on parts `I`, `J`, `K` with 0-based indices inside each
/// part. Only cross-part edges exist.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tripartite {
    pub sizes: [usize; 3],
    pub ij: Vec<(usize, usize)>,
    pub jk: Vec<(usize, usize)>,
    pub ki: Vec<(usize, usize)>,
}

impl Tripartite {
    pub fn validate(&self) -> Result<()> {
        let [ni, nj, nk] = self.sizes;
        if ni == 0 {
            return Err(Error::Precondition("part I is empty".into()));
        }
        let lists = [(&self.ij, ni, nj, "ij"), (&self.jk, nj, nk, "jk"), (&self.ki, nk, ni, "ki")];
        for (list, na, nb, tag) in lists {
            if let Some(&(a, b)) = list.iter().find(|&&(a, b)| a >= na || b >= nb) {
                return Err(Error::Precondition(format!("{tag} edge ({a}, {b}) is outside the parts")));
            }
        }
        Ok(())
    }

    /// Uniform edge sample: each cross pair is present with probability `p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Tripartite {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if rng.gen_bool(p) {
                        out.push((a, b));
                    }
                }
            }
            out
        };
        Tripartite {
            sizes: [n; 3],
            ij: pick(&mut rng),
            jk: pick(&mut rng),
            ki: pick(&mut rng),
        }
    }
}

/// Text format: `I J K` on the first line, then `ij a b`, `jk a b` or
/// `ki a b` per edge. `#` starts a comment line.
pub fn parse_tripartite(text: &str) -> Result<Tripartite> {
    let mut t: Option<Tripartite> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("`{s}` is not an index")));
        match (&mut t, toks.as_slice()) {
            (None, [a, b, c]) => {
                t = Some(Tripartite {
                    sizes: [num(a)?, num(b)?, num(c)?],
                    ..Tripartite::default()
                })
            }
            (None, _) => return Err(err("expected part sizes `I J K`".into())),
            (Some(t), [tag, a, b]) => {
                let e = (num(a)?, num(b)?);
                match *tag {
                    "ij" => t.ij.push(e),
                    "jk" => t.jk.push(e),
                    "ki" => t.ki.push(e),
                    other => return Err(err(format!("unknown edge kind `{other}`"))),
                }
            }
            (Some(_), _) => return Err(err("expected `ij|jk|ki a b`".into())),
        }
    }
    let t = t.ok_or_else(|| Error::Parse { line: 0, message: "empty input".into() })?;
    t.validate()?;
    Ok(t)
}

pub fn render_tripartite(t: &Tripartite) -> String {
    let mut out = format!("{} {} {}\n", t.sizes[0], t.sizes[1], t.sizes[2]);
    for (tag, list) in [("ij", &t.ij), ("jk", &t.jk), ("ki", &t.ki)] {
        for (a, b) in list {
            writeln!(out, "{tag} {a} {b}").expect("string write");
        }
    }
    out
}

/// Vertices `s`, `i1_p`, `j_q`, `k_r`, `i2_p`, `t` (1-based). `s -> i1_1 ->
/// ... -> i1_n` and `i2_1 -> ... -> i2_n -> t` have weight -1; cross edges
/// `i1_p -> j_q -> k_r -> i2_p` mirror the edges of `H` with weight 1.
pub fn build_triangle_gadget(h: &Tripartite) -> Result<GadgetGraph> {
    h.validate()?;
    let [ni, nj, nk] = h.sizes;
    let mut g = Builder::default();
    let s = g.named("s".into());
    let i1: Vec<usize> = (1..=ni).map(|p| g.named(format!("i1_{p}"))).collect();
    let js: Vec<usize> = (1..=nj).map(|q| g.named(format!("j_{q}"))).collect();
    let ks: Vec<usize> = (1..=nk).map(|r| g.named(format!("k_{r}"))).collect();
    let i2: Vec<usize> = (1..=ni).map(|p| g.named(format!("i2_{p}"))).collect();
    let t = g.named("t".into());
    g.edge(s, i1[0], -1);
    for w in i1.windows(2).chain(i2.windows(2)) {
        g.edge(w[0], w[1], -1);
    }
    g.edge(i2[ni - 1], t, -1);
    for &(a, b) in &h.ij {
        g.edge(i1[a], js[b], 1);
    }
    for &(a, b) in &h.jk {
        g.edge(js[a], ks[b], 1);
    }
    for &(a, b) in &h.ki {
        g.edge(ks[a], i2[b], 1);
    }
    g.finish(BTreeMap::from([("n".to_string(), ni as i64)]))
}

/// `d_{<=n+4}(s, t) == 2 - n`, from a row rooted at `s`.
pub fn decide_triangle(gadget: &GadgetGraph, row: &AllHopsRow) -> Result<bool> {
    let n = gadget.param("n")?;
    if row.source != gadget.vertex("s")? {
        return Err(Error::Precondition("decider needs the row of s".into()));
    }
    let hops = (n + 4) as usize;
    if row.max_hop < hops {
        return Err(Error::HopOutOfRange { h: hops, max: row.max_hop });
    }
    Ok(row.le(hops, gadget.vertex("t")?).finite() == Some(2 - n))
}

pub fn has_triangle_brute(h: &Tripartite) -> bool {
    let [ni, nj, nk] = h.sizes;
    let mut ij = vec![vec![false; nj]; ni];
    let mut jk = vec![vec![false; nk]; nj];
    let mut ki = vec![vec![false; ni]; nk];
    for &(a, b) in &h.ij {
        ij[a][b] = true;
    }
    for &(a, b) in &h.jk {
        jk[a][b] = true;
    }
    for &(a, b) in &h.ki {
        ki[a][b] = true;
    }
    (0..ni).any(|i| (0..nj).any(|j| ij[i][j] && (0..nk).any(|k| jk[j][k] && ki[k][i])))
}

/// Builds the gadget, checks the weight set and compares the decision with
/// [`has_triangle_brute`]. Returns the decision.
pub fn verify_triangle(h: &Tripartite) -> Result<bool> {
    let gadget = build_triangle_gadget(h)?;
    if gadget.graph.edges().iter().any(|e| e.weight != 1 && e.weight != -1) {
        return Err(Error::Verification("triangle gadget has a weight outside {-1, 1}".into()));
    }
    let n = h.sizes[0];
    let row = bellman_ford_allhops(&gadget.graph, gadget.vertex("s")?, n + 4)?;
    let got = decide_triangle(&gadget, &row)?;
    let want = has_triangle_brute(h);
    if got != want {
        return Err(Error::Verification(format!("gadget says {got}, direct search says {want}")));
    }
    Ok(got)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::d;
    use proptest::prelude::*;

    fn one() -> Tripartite {
        Tripartite {
            sizes: [1; 3],
            ij: vec![(0, 0)],
            jk: vec![(0, 0)],
            ki: vec![(0, 0)],
        }
    }

    #[test]
    fn single_triangle() {
        let g = build_triangle_gadget(&one()).unwrap();
        let row = bellman_ford_allhops(&g.graph, g.vertex("s").unwrap(), 5).unwrap();
        assert_eq!(row.le(5, g.vertex("t").unwrap()), d(1));
        assert!(decide_triangle(&g, &row).unwrap());
        assert!(verify_triangle(&one()).unwrap());
    }

    #[test]
    fn missing_edge() {
        let mut h = one();
        h.ki.clear();
        let g = build_triangle_gadget(&h).unwrap();
        let row = bellman_ford_allhops(&g.graph, g.vertex("s").unwrap(), 5).unwrap();
        assert!(row.le(5, g.vertex("t").unwrap()).is_inf());
        assert!(!verify_triangle(&h).unwrap());
    }

    #[test]
    fn text_format() {
        let h = Tripartite::random(4, 0.4, 9);
        assert_eq!(parse_tripartite(&render_tripartite(&h)).unwrap(), h);
        let h = parse_tripartite("# c\n2 1 1\nij 1 0\njk 0 0\nki 0 1\n").unwrap();
        assert!(has_triangle_brute(&h));
        assert!(parse_tripartite("2 1 1\nii 0 0\n").is_err());
        assert!(parse_tripartite("2 1 1\nij 0 1\n").is_err());
        assert!(parse_tripartite("2 1\n").is_err());
        assert!(parse_tripartite("0 1 1\n").is_err());
        assert!(parse_tripartite("").is_err());
    }

    #[test]
    fn gadget_is_acyclic_with_unit_weights() {
        let g = build_triangle_gadget(&Tripartite::random(6, 0.5, 1)).unwrap();
        assert!(super::super::is_acyclic(&g.graph));
        assert_eq!(g.graph.n(), 6 * 4 + 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn decision_matches_search(n in 1usize..=10, p in 0.05f64..0.5, seed in any::<u64>()) {
            let h = Tripartite::random(n, p, seed);
            prop_assert_eq!(verify_triangle(&h).unwrap(), has_triangle_brute(&h));
        }
    }
}
