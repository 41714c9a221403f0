//! Graph sources: edge-list files and family specs.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use sqfpow::Graph;

/// Parses the edge-list format: optional `n <count>` line, then one `u v` pair
/// per line, `#` starting a comment. Without an `n` line the largest label wins.
pub fn parse_edge_list(text: &str) -> Result<Graph, String> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| format!("line {}: `{s}` is not a vertex label", lineno + 1));
        match fields.as_slice() {
            ["n", count] => {
                if n.is_some() || !pairs.is_empty() {
                    return Err(format!("line {}: `n` must be the first entry and appear once", lineno + 1));
                }
                n = Some(num(count)?);
            }
            [u, v] => pairs.push((num(u)?, num(v)?)),
            _ => return Err(format!("line {}: expected `u v` or `n <count>`, got `{line}`", lineno + 1)),
        }
    }
    let n = n.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0));
    Graph::from_edges(n, &pairs).map_err(|e| e.to_string())
}

pub fn read_graph_file(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// `path:n`, `cycle:n`, `star:n` or `random-forest[:n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    RandomForest(Option<usize>),
}

impl FromStr for FamilySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, size) = match s.split_once(':') {
            Some((name, size)) => {
                let n = size.parse::<usize>().map_err(|_| format!("`{size}` is not a vertex count"))?;
                (name, Some(n))
            }
            None => (s, None),
        };
        match (name, size) {
            ("path", Some(n)) => Ok(FamilySpec::Path(n)),
            ("cycle", Some(n)) => Ok(FamilySpec::Cycle(n)),
            ("star", Some(n)) => Ok(FamilySpec::Star(n)),
            ("random-forest", n) => Ok(FamilySpec::RandomForest(n)),
            ("path" | "cycle" | "star", None) => Err(format!("`{name}` needs a size, as in `{name}:6`")),
            _ => Err(format!("unknown family `{name}`; expected path:n, cycle:n, star:n or random-forest[:n]")),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::RandomForest(Some(n)) => write!(f, "random-forest:{n}"),
            FamilySpec::RandomForest(None) => write!(f, "random-forest"),
        }
    }
}

impl FamilySpec {
    /// The graph for one trial. Random forests use `seed`, and without an
    /// explicit size get `2 + seed % 8` vertices.
    pub fn build(&self, seed: u64) -> Result<Graph, String> {
        let g = match *self {
            FamilySpec::Path(n) => Graph::path(n),
            FamilySpec::Cycle(n) => Graph::cycle(n),
            FamilySpec::Star(n) => Graph::star(n),
            FamilySpec::RandomForest(n) => Graph::random_forest(n.unwrap_or(2 + (seed % 8) as usize), seed),
        };
        g.map_err(|e| e.to_string())
    }

    pub fn is_random(&self) -> bool {
        matches!(self, FamilySpec::RandomForest(_))
    }
}
