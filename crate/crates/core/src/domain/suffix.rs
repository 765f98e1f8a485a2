//! Public-suffix rule matching against the bundled list snapshot.
//!
//! The rule semantics follow the list's own documentation: the longest
//! matching rule wins, exception rules (`!`) beat everything, wildcard rules
//! (`*.`) match exactly one extra label, and an unlisted TLD falls back to the
//! implicit `*` rule.

use std::collections::HashSet;
use std::sync::LazyLock;

const BUNDLED_LIST: &str = include_str!("../../data/public_suffix_list.dat");

static BUNDLED: LazyLock<SuffixList> = LazyLock::new(|| SuffixList::parse(BUNDLED_LIST));

/// The suffix list compiled into this crate.
pub fn bundled() -> &'static SuffixList {
    &BUNDLED
}

/// Result of matching a host's labels against the list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixMatch {
    /// Number of trailing labels that form the public suffix.
    pub suffix_labels: usize,
    /// False when only the implicit `*` rule applied.
    pub listed: bool,
}

#[derive(Debug, Default)]
pub struct SuffixList {
    version: String,
    commit: Option<String>,
    exact: HashSet<String>,
    wildcard: HashSet<String>,
    exception: HashSet<String>,
}

impl SuffixList {
    /// Parses the textual list format. Unicode rules are stored in their
    /// ASCII (punycode) form so lookups can work on `url`-normalized hosts.
    pub fn parse(text: &str) -> Self {
        let mut list = SuffixList {
            version: "unversioned".to_owned(),
            ..Default::default()
        };
        for line in text.lines() {
            let line = line.trim();
            if let Some(comment) = line.strip_prefix("//") {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("VERSION:") {
                    list.version = v.trim().to_owned();
                } else if let Some(c) = comment.strip_prefix("COMMIT:") {
                    list.commit = Some(c.trim().to_owned());
                }
                continue;
            }
            // Rules end at the first whitespace.
            let Some(rule) = line.split_whitespace().next() else {
                continue;
            };
            if let Some(rest) = rule.strip_prefix('!') {
                if let Some(ascii) = to_ascii(rest) {
                    list.exception.insert(ascii);
                }
            } else if let Some(rest) = rule.strip_prefix("*.") {
                if let Some(ascii) = to_ascii(rest) {
                    list.wildcard.insert(ascii);
                }
            } else if let Some(ascii) = to_ascii(rule) {
                list.exact.insert(ascii);
            }
        }
        list
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn commit(&self) -> Option<&str> {
        self.commit.as_deref()
    }

    pub fn rule_count(&self) -> usize {
        self.exact.len() + self.wildcard.len() + self.exception.len()
    }

    /// Matches the labels of an ASCII, lowercase host (`labels[0]` is the
    /// leftmost label).
    pub fn match_labels(&self, labels: &[&str]) -> SuffixMatch {
        let n = labels.len();
        let mut best: Option<usize> = None;
        for start in 0..n {
            let candidate = labels[start..].join(".");
            if self.exception.contains(&candidate) {
                // An exception rule's public suffix is the rule minus its
                // leftmost label, and it overrides any other match.
                return SuffixMatch {
                    suffix_labels: n - start - 1,
                    listed: true,
                };
            }
            let len = n - start;
            if self.exact.contains(&candidate) {
                best = Some(best.map_or(len, |b| b.max(len)));
            }
            if start + 1 < n && self.wildcard.contains(&labels[start + 1..].join(".")) {
                best = Some(best.map_or(len, |b| b.max(len)));
            }
        }
        match best {
            Some(suffix_labels) => SuffixMatch {
                suffix_labels,
                listed: true,
            },
            None => SuffixMatch {
                suffix_labels: 1,
                listed: false,
            },
        }
    }

    pub fn is_public_suffix(&self, host: &str) -> bool {
        let labels: Vec<&str> = host.split('.').collect();
        self.match_labels(&labels).suffix_labels == labels.len()
    }
}

fn to_ascii(rule: &str) -> Option<String> {
    if rule.is_ascii() {
        return Some(rule.to_ascii_lowercase());
    }
    idna::domain_to_ascii(rule).ok()
}
