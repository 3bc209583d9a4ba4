//! Text names for family instances, e.g. `heisenberg:n=3`, `kneser:n=5,m=2`,
//! `cayley:group=z2^2,T=1;2;3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::*;

/// A parsed family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Heisenberg { n: usize },
    Free { n: usize },
    Ring { r: usize, primed: bool },
    Quaternionic { associate: bool },
    Cyclic { q: usize },
    Kneser { n: usize, m: usize },
    Cayley { group: String, involutions: Vec<usize> },
    Dihedral { p: usize },
    K5,
    HeisenbergSum,
    Trivial { graph: String, n: usize, a: usize, b: usize },
}

pub const FAMILY_NAMES: &[&str] = &[
    "heisenberg:n=<n>",
    "free:n=<n>",
    "ring:r=<r>[,primed=true]",
    "quaternionic[:associate=true]",
    "cyclic:q=<q>",
    "kneser:n=<n>,m=<m>",
    "cayley:group=<z<n>|z2^<k>|dihedral<p>|s<n>>[,T=<t1>;<t2>;...]",
    "dihedral:p=<p>",
    "k5",
    "h3+h3",
    "trivial:graph=<complete|cycle|bipartite|petersen>[,n=<n>][,a=<a>,b=<b>]",
];

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params: BTreeMap<String, String> = BTreeMap::new();
        for kv in rest.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got '{kv}'")))?;
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(bad(format!("parameter '{k}' given twice")));
            }
        }
        let mut take = |key: &str| params.remove(key);
        let num = |v: Option<String>, key: &str| -> Result<usize> {
            let v = v.ok_or_else(|| bad(format!("missing parameter '{key}'")))?;
            v.parse().map_err(|_| bad(format!("'{key}' must be a number, got '{v}'")))
        };
        let flag = |v: Option<String>, key: &str| -> Result<bool> {
            match v.as_deref() {
                None | Some("false") => Ok(false),
                Some("true") => Ok(true),
                Some(o) => Err(bad(format!("'{key}' must be true or false, got '{o}'"))),
            }
        };
        let spec = match name.trim() {
            "heisenberg" => FamilySpec::Heisenberg { n: num(take("n"), "n")? },
            "free" => FamilySpec::Free { n: num(take("n"), "n")? },
            "ring" => FamilySpec::Ring {
                r: num(take("r"), "r")?,
                primed: flag(take("primed"), "primed")?,
            },
            "quaternionic" => FamilySpec::Quaternionic {
                associate: flag(take("associate"), "associate")?,
            },
            "cyclic" => FamilySpec::Cyclic { q: num(take("q"), "q")? },
            "kneser" => FamilySpec::Kneser {
                n: num(take("n"), "n")?,
                m: num(take("m"), "m")?,
            },
            "cayley" => {
                let group = take("group").ok_or_else(|| bad("missing parameter 'group'"))?;
                let involutions = match take("T") {
                    None => FiniteGroup::by_name(&group)?.involutions(),
                    Some(t) => t
                        .split(';')
                        .map(|x| x.trim().parse().map_err(|_| bad(format!("bad element '{x}' in T"))))
                        .collect::<Result<Vec<usize>>>()?,
                };
                FamilySpec::Cayley { group, involutions }
            }
            "dihedral" => FamilySpec::Dihedral { p: num(take("p"), "p")? },
            "k5" => FamilySpec::K5,
            "h3+h3" => FamilySpec::HeisenbergSum,
            "trivial" => {
                let graph = take("graph").ok_or_else(|| bad("missing parameter 'graph'"))?;
                let n = take("n").map(|v| num(Some(v), "n")).transpose()?.unwrap_or(0);
                let a = take("a").map(|v| num(Some(v), "a")).transpose()?.unwrap_or(0);
                let b = take("b").map(|v| num(Some(v), "b")).transpose()?.unwrap_or(0);
                FamilySpec::Trivial { graph, n, a, b }
            }
            other => return Err(bad(format!("unknown family '{other}'"))),
        };
        if let Some(k) = params.keys().next() {
            return Err(bad(format!("unknown parameter '{k}' for {name}")));
        }
        Ok(spec)
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<ColoredDigraph> {
        match self {
            FamilySpec::Heisenberg { n } => heisenberg(*n),
            FamilySpec::Free { n } => free_two_step(*n),
            FamilySpec::Ring { r, primed } => ring_algebra(*r, *primed),
            FamilySpec::Quaternionic { associate } => quaternionic(*associate),
            FamilySpec::Cyclic { q } => cyclic(*q),
            FamilySpec::Kneser { n, m } => kneser(*n, *m),
            FamilySpec::Cayley { group, involutions } => cayley(&FiniteGroup::by_name(group)?, involutions),
            FamilySpec::Dihedral { p } => dihedral_bipartite(*p),
            FamilySpec::K5 => k5_near_one_factorization(),
            FamilySpec::HeisenbergSum => heisenberg_sum(),
            FamilySpec::Trivial { graph, n, a, b } => {
                let g = match graph.as_str() {
                    "complete" => SimpleGraph::complete(*n)?,
                    "cycle" => SimpleGraph::cycle(*n)?,
                    "bipartite" => SimpleGraph::complete_bipartite(*a, *b)?,
                    "petersen" => kneser(5, 2)?.underlying()?,
                    o => return Err(bad(format!("unknown graph '{o}'"))),
                };
                trivial_coloring(&g)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Heisenberg { n } => write!(f, "heisenberg:n={n}"),
            FamilySpec::Free { n } => write!(f, "free:n={n}"),
            FamilySpec::Ring { r, primed } => write!(f, "ring:r={r},primed={primed}"),
            FamilySpec::Quaternionic { associate } => write!(f, "quaternionic:associate={associate}"),
            FamilySpec::Cyclic { q } => write!(f, "cyclic:q={q}"),
            FamilySpec::Kneser { n, m } => write!(f, "kneser:n={n},m={m}"),
            FamilySpec::Cayley { group, involutions } => {
                let t: Vec<String> = involutions.iter().map(|x| x.to_string()).collect();
                write!(f, "cayley:group={group},T={}", t.join(";"))
            }
            FamilySpec::Dihedral { p } => write!(f, "dihedral:p={p}"),
            FamilySpec::K5 => write!(f, "k5"),
            FamilySpec::HeisenbergSum => write!(f, "h3+h3"),
            FamilySpec::Trivial { graph, n, a, b } => match graph.as_str() {
                "bipartite" => write!(f, "trivial:graph=bipartite,a={a},b={b}"),
                "petersen" => write!(f, "trivial:graph=petersen"),
                _ => write!(f, "trivial:graph={graph},n={n}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_uniform;

    #[test]
    fn parse_and_build() {
        let cases = [
            ("heisenberg:n=3", (1, 6, 3)),
            ("kneser:n=5,m=2", (5, 10, 3)),
            ("cayley:group=z2^2,T=1;2;3", (3, 4, 2)),
            ("cayley:group=s3", (3, 6, 3)),
            ("ring:r=3,primed=true", (2, 6, 3)),
            ("quaternionic:associate=true", (3, 4, 2)),
            ("trivial:graph=cycle,n=5", (5, 5, 1)),
            ("k5", (5, 5, 2)),
        ];
        for (s, want) in cases {
            let spec: FamilySpec = s.parse().unwrap();
            let g = spec.build().unwrap();
            assert_eq!(validate_uniform(&g).pqr(), Some(want), "{s}");
            let again: FamilySpec = spec.to_string().parse().unwrap();
            assert_eq!(again.build().unwrap(), g, "{s}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!("heisenberg".parse::<FamilySpec>().is_err());
        assert!("heisenberg:n=x".parse::<FamilySpec>().is_err());
        assert!("heisenberg:n=2,m=3".parse::<FamilySpec>().is_err());
        assert!("nope:n=2".parse::<FamilySpec>().is_err());
        assert!("ring:r=2,primed=maybe".parse::<FamilySpec>().is_err());
    }
}
