use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::Host;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("query has neither a phrase nor a site restriction")]
    Empty,
    #[error("phrase {0:?} is empty or contains a double quote")]
    BadPhrase(String),
}

/// A hit-count query: an optional quoted phrase, optionally restricted to one
/// site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HitCountQuery {
    phrase: Option<String>,
    site: Option<Host>,
}

impl HitCountQuery {
    pub fn new(phrase: Option<&str>, site: Option<Host>) -> Result<Self, QueryError> {
        if let Some(p) = phrase {
            if p.is_empty() || p.contains('"') {
                return Err(QueryError::BadPhrase(p.to_owned()));
            }
        }
        if phrase.is_none() && site.is_none() {
            return Err(QueryError::Empty);
        }
        Ok(HitCountQuery {
            phrase: phrase.map(str::to_owned),
            site,
        })
    }

    /// `site:HOST`, the page-count query.
    pub fn page_count(site: &Host) -> Self {
        HitCountQuery {
            phrase: None,
            site: Some(site.clone()),
        }
    }

    /// `"TARGET" site:SOURCE`, the URL-mention query.
    pub fn mention(target: &Host, source: &Host) -> Self {
        HitCountQuery {
            phrase: Some(target.as_str().to_owned()),
            site: Some(source.clone()),
        }
    }

    pub fn phrase(&self) -> Option<&str> {
        self.phrase.as_deref()
    }

    pub fn site(&self) -> Option<&Host> {
        self.site.as_ref()
    }

    pub fn render(&self) -> String {
        render_query(self)
    }
}

impl fmt::Display for HitCountQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render_query(q: &HitCountQuery) -> String {
    match (&q.phrase, &q.site) {
        (Some(p), Some(s)) => format!("\"{p}\" site:{s}"),
        (Some(p), None) => format!("\"{p}\""),
        (None, Some(s)) => format!("site:{s}"),
        (None, None) => unreachable!("constructors reject empty queries"),
    }
}
