//! Small groups named on the command line, for `search` and `negative`.

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use beauville::arith;
use beauville::grouptool::small::{CyclicProduct, Metacyclic};
use beauville::grouptool::{closure, exhaustive_beauville_search, FiniteGroup, Group, DEFAULT_BOUND};
use beauville::psl2::{LinearGroup, Mode};
use beauville::serial::Mat2Json;
use beauville::Field;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Linear(u64, Mode),
    Metacyclic(u64),
    Cyclic(u64, u64),
}

/// Accepts `a5`, `l2-Q` / `psl2-Q`, `sl2-Q`, `metacyclic-P` and `cMxcN`.
pub fn parse_group(name: &str) -> Result<GroupSpec> {
    let name = name.trim().to_ascii_lowercase();
    let num = |s: &str| -> Result<u64> { s.parse().with_context(|| format!("bad number `{s}` in group name")) };
    let spec = if name == "a5" {
        GroupSpec::Linear(5, Mode::PSL2)
    } else if let Some(q) = name.strip_prefix("l2-").or_else(|| name.strip_prefix("psl2-")) {
        GroupSpec::Linear(num(q)?, Mode::PSL2)
    } else if let Some(q) = name.strip_prefix("sl2-") {
        GroupSpec::Linear(num(q)?, Mode::SL2)
    } else if let Some(p) = name.strip_prefix("metacyclic-") {
        let p = num(p)?;
        if !arith::is_prime(p) || p < 3 {
            bail!("metacyclic groups need an odd prime, got {p}");
        }
        GroupSpec::Metacyclic(p)
    } else if let Some((m, n)) = name.strip_prefix('c').and_then(|r| r.split_once("xc")) {
        let (m, n) = (num(m)?, num(n)?);
        if m == 0 || n == 0 {
            bail!("cyclic factors must be non-trivial");
        }
        GroupSpec::Cyclic(m, n)
    } else {
        bail!("unknown group `{name}` (try a5, l2-7, sl2-5, metacyclic-5, c5xc5)");
    };
    Ok(spec)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchDoc {
    pub group: String,
    pub order: usize,
    pub triples_examined: usize,
    pub signatures: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<[[Value; 3]; 2]>,
}

fn search<G: Group>(name: &str, fg: &FiniteGroup<G>, show: impl Fn(G::Elem) -> Value) -> Result<SearchDoc> {
    let out = exhaustive_beauville_search(fg)?;
    Ok(SearchDoc {
        group: name.to_string(),
        order: fg.order(),
        triples_examined: out.triples_examined,
        signatures: out.signatures,
        found: out.structure.is_some(),
        structure: out.structure.map(|(a, b)| [a.map(&show), b.map(&show)]),
    })
}

pub fn run_search(spec: GroupSpec, name: &str) -> Result<SearchDoc> {
    match spec {
        GroupSpec::Linear(q, mode) => {
            let f = Field::of_order(q)?;
            let g = LinearGroup::new(&f, mode);
            let fg = closure(g.clone(), &g.standard_generators(), DEFAULT_BOUND)?;
            search(name, &fg, |m| serde_json::to_value(Mat2Json::new(&f, m, mode)).expect("serializable"))
        }
        GroupSpec::Metacyclic(p) => {
            let g = Metacyclic::new(p);
            let fg = closure(g, &g.generators(), DEFAULT_BOUND)?;
            // a^i b^j
            search(name, &fg, |(i, j)| json!([i, j]))
        }
        GroupSpec::Cyclic(m, n) => {
            let g = CyclicProduct::new(m, n);
            let fg = closure(g, &g.generators(), DEFAULT_BOUND)?;
            search(name, &fg, |(i, j)| json!([i, j]))
        }
    }
}
