//! Detection of URL-string collisions between mention queries.
//!
//! A phrase query for `"terra.com"` also matches every occurrence of
//! `terra.com.br`, `terra.com.mx` and so on, because the shorter host is a
//! leading substring of the longer ones. Prefixes only count at a label
//! boundary: `terra.com` collides with `terra.com.br` but not with
//! `terra.community`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::Host;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Collision {
    /// The target is a prefix of the site being searched, so self-mentions of
    /// the source are counted as mentions of the target.
    SelfPrefix,
    /// The target is a prefix of some other domain the source may mention.
    SiblingPrefix,
    None,
}

impl Collision {
    pub fn as_str(self) -> &'static str {
        match self {
            Collision::SelfPrefix => "SELF_PREFIX",
            Collision::SiblingPrefix => "SIBLING_PREFIX",
            Collision::None => "NONE",
        }
    }
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Collision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "SELF_PREFIX" => Ok(Collision::SelfPrefix),
            "SIBLING_PREFIX" => Ok(Collision::SiblingPrefix),
            "NONE" => Ok(Collision::None),
            other => Err(format!("unknown collision class {other:?}")),
        }
    }
}

/// True when `short` is a proper leading substring of `long` ending at a
/// label boundary.
pub fn is_label_prefix(short: &str, long: &str) -> bool {
    long.len() > short.len() && long.starts_with(short) && long.as_bytes()[short.len()] == b'.'
}

/// Siblings whose mentions a `"target" site:source` query also counts.
/// Target and source themselves are never included.
pub fn colliding_siblings<'a>(
    target: &Host,
    source: &Host,
    siblings: impl IntoIterator<Item = &'a Host>,
) -> Vec<&'a Host> {
    let mut out: Vec<&Host> = siblings
        .into_iter()
        .filter(|s| *s != target && *s != source && is_label_prefix(target.as_str(), s.as_str()))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn detect_collision<'a>(
    target: &Host,
    source: &Host,
    siblings: impl IntoIterator<Item = &'a Host>,
) -> Collision {
    if is_label_prefix(target.as_str(), source.as_str()) {
        Collision::SelfPrefix
    } else if !colliding_siblings(target, source, siblings).is_empty() {
        Collision::SiblingPrefix
    } else {
        Collision::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> Host {
        Host::parse(s).unwrap()
    }

    #[test]
    fn classes() {
        assert_eq!(
            detect_collision(&h("terra.com"), &h("terra.com.br"), []),
            Collision::SelfPrefix
        );
        assert_eq!(
            detect_collision(&h("acciona.com"), &h("acciona.com.br"), []),
            Collision::SelfPrefix
        );
        let sibs = [h("telefonica.com"), h("movistar.es"), h("terra.com.mx")];
        assert_eq!(
            detect_collision(&h("movistar.es"), &h("telefonica.com"), &sibs),
            Collision::None
        );
        assert_eq!(
            detect_collision(&h("terra.com"), &h("ebrofoods.es"), &sibs),
            Collision::SiblingPrefix
        );
    }

    #[test]
    fn boundary_matters() {
        assert!(!is_label_prefix("terra.com", "terra.community"));
        assert!(!is_label_prefix("terra.com", "terra.com"));
        assert!(is_label_prefix("terra.com", "terra.com.br"));
    }

    #[test]
    fn siblings_exclude_target_and_source() {
        let sibs = [h("terra.com"), h("terra.com.br"), h("terra.com.mx")];
        let got = colliding_siblings(&h("terra.com"), &h("terra.com.br"), &sibs);
        assert_eq!(got, [&h("terra.com.mx")]);
    }
}
