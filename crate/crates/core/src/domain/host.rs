//! Registrable-domain normalization.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use url::Url;

use super::suffix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HostError {
    #[error("malformed host {input:?}: {reason}")]
    MalformedHost { input: String, reason: String },
    #[error("{input:?} is not a registrable domain (normalizes to {normalized:?})")]
    NotRegistrable { input: String, normalized: String },
}

fn malformed(input: &str, reason: impl Into<String>) -> HostError {
    HostError::MalformedHost {
        input: input.to_owned(),
        reason: reason.into(),
    }
}

/// A registrable domain: lowercase, ASCII, public suffix plus one label.
///
/// The only ways to build one are [`normalize_host`] and [`Host::parse`],
/// so every value upholds the registrable-domain invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Host(String);

impl Host {
    /// Accepts a string that already is a registrable domain (case aside).
    pub fn parse(s: &str) -> Result<Host, HostError> {
        let normalized = normalize_host(s)?;
        let given = s.trim().to_ascii_lowercase();
        if normalized.host.0 != given {
            return Err(HostError::NotRegistrable {
                input: s.to_owned(),
                normalized: normalized.host.0,
            });
        }
        Ok(normalized.host)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The label left of the public suffix (`"acciona"` for `acciona.com.br`).
    pub fn label(&self) -> &str {
        self.0.split('.').next().unwrap_or(&self.0)
    }

    /// The public suffix (`"com.br"` for `acciona.com.br`).
    pub fn suffix(&self) -> &str {
        self.0.split_once('.').map_or("", |(_, s)| s)
    }
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Host {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl FromStr for Host {
    type Err = HostError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Host::parse(s)
    }
}

impl TryFrom<String> for Host {
    type Error = HostError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Host::parse(&s)
    }
}

impl From<Host> for String {
    fn from(h: Host) -> String {
        h.0
    }
}

/// Outcome of [`normalize_host`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub host: Host,
    /// False when the suffix came from the last-label fallback instead of an
    /// explicit list rule.
    pub known_suffix: bool,
}

/// Reduces a URL or host string to its registrable domain.
///
/// Scheme, credentials, port, path, query, fragment and every subdomain label
/// (including `www.`) are dropped. Internationalized names come out in
/// punycode.
pub fn normalize_host(raw: &str) -> Result<Normalized, HostError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(malformed(raw, "empty input"));
    }
    let host = extract_host(trimmed).ok_or_else(|| malformed(raw, "no host part"))?;
    let host = host.strip_suffix('.').unwrap_or(&host);
    if host.is_empty() {
        return Err(malformed(raw, "no host part"));
    }
    let labels: Vec<&str> = host.split('.').collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(malformed(raw, "empty label"));
    }
    let m = suffix::bundled().match_labels(&labels);
    if m.suffix_labels >= labels.len() {
        return Err(malformed(raw, "host is a bare public suffix"));
    }
    let registrable = labels[labels.len() - m.suffix_labels - 1..].join(".");
    Ok(Normalized {
        host: Host(registrable),
        known_suffix: m.listed,
    })
}

fn extract_host(input: &str) -> Option<String> {
    let with_scheme = if input.contains("://") || has_opaque_scheme(input) {
        input.to_owned()
    } else if let Some(rest) = input.strip_prefix("//") {
        format!("http://{rest}")
    } else {
        format!("http://{input}")
    };
    let url = Url::parse(&with_scheme).ok()?;
    match url.host()? {
        url::Host::Domain(d) => Some(d.to_ascii_lowercase()),
        // IP literals have no registrable domain.
        url::Host::Ipv4(_) | url::Host::Ipv6(_) => None,
    }
}

/// `mailto:`, `javascript:`, `tel:` and friends, but not `host:8080`.
fn has_opaque_scheme(input: &str) -> bool {
    let Some((scheme, rest)) = input.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        && !rest.starts_with(|c: char| c.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(s: &str) -> String {
        normalize_host(s).unwrap().host.to_string()
    }

    #[test]
    fn subdomains_and_paths_collapse() {
        assert_eq!(norm("http://br.amadeus.com/x"), "amadeus.com");
        assert_eq!(norm("amadeus.com/ro/x41234.xml"), "amadeus.com");
        assert_eq!(norm("acciona.com:8080/x"), "acciona.com");
        assert_eq!(
            norm("https://www.acciona-engineering.com:8443/a?b#c"),
            "acciona-engineering.com"
        );
    }

    #[test]
    fn cctld_stays_distinct() {
        assert_eq!(norm("amadeus.cl"), "amadeus.cl");
        assert_eq!(norm("terra.com.br"), "terra.com.br");
        assert_eq!(norm("www.terra.com.br"), "terra.com.br");
    }

    #[test]
    fn case_is_folded() {
        assert_eq!(norm("ACCIONA.COM"), "acciona.com");
        assert_eq!(Host::parse("ACCIONA.COM").unwrap().as_str(), "acciona.com");
    }

    #[test]
    fn unknown_suffix_is_flagged() {
        let n = normalize_host("intranet.corp.example").unwrap();
        assert_eq!(n.host.as_str(), "corp.example");
        assert!(!n.known_suffix);
        assert!(normalize_host("acciona.com").unwrap().known_suffix);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "   ",
            "com",
            "com.br",
            "http://",
            "mailto:x@y.com",
            "http://192.168.0.1/",
            "a..b.com",
        ] {
            assert!(
                matches!(normalize_host(bad), Err(HostError::MalformedHost { .. })),
                "{bad:?} should be malformed"
            );
        }
    }

    #[test]
    fn parse_rejects_subdomains() {
        let err = Host::parse("www.acciona.com").unwrap_err();
        assert_eq!(
            err,
            HostError::NotRegistrable {
                input: "www.acciona.com".into(),
                normalized: "acciona.com".into()
            }
        );
    }

    #[test]
    fn label_and_suffix_split() {
        let h = Host::parse("acciona.com.br").unwrap();
        assert_eq!(h.label(), "acciona");
        assert_eq!(h.suffix(), "com.br");
    }

    #[test]
    fn idn_hosts_become_punycode() {
        assert_eq!(norm("http://www.bücher.de/"), "xn--bcher-kva.de");
    }
}
