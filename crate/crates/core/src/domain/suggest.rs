//! Category suggestions for newly discovered domains.
//!
//! Suggestions only pre-fill the review queue; a registry entry with an
//! explicit category always wins.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Category, Host};

/// Suggestions below this confidence need a human decision in the registry.
pub const CONFIRMATION_THRESHOLD: f64 = 0.5;

const DELEGATION_CONFIDENCE: f64 = 0.8;
const NO_SIGNAL_CONFIDENCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Suggestion {
    pub category: Category,
    pub confidence: f64,
}

impl Suggestion {
    pub fn needs_confirmation(&self) -> bool {
        self.confidence < CONFIRMATION_THRESHOLD
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HintError {
    #[error("corporate status is declared in the registry, never suggested (keyword {0:?})")]
    CorporateHint(String),
    #[error("confidence {0} outside [0, 1]")]
    Confidence(f64),
    #[error("empty keyword")]
    EmptyKeyword,
}

#[derive(Debug, Clone, PartialEq)]
struct Hint {
    keyword: String,
    category: Category,
    confidence: f64,
}

/// Keyword table matched against a host's registrable label.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryHints {
    hints: Vec<Hint>,
}

impl CategoryHints {
    pub fn empty() -> Self {
        CategoryHints { hints: Vec::new() }
    }

    /// Adds a keyword. Earlier keywords take precedence over later ones.
    pub fn with(
        mut self,
        keyword: &str,
        category: Category,
        confidence: f64,
    ) -> Result<Self, HintError> {
        if category == Category::Corporate {
            return Err(HintError::CorporateHint(keyword.to_owned()));
        }
        if !(0.0..=1.0).contains(&confidence) {
            return Err(HintError::Confidence(confidence));
        }
        let keyword = keyword.trim().to_ascii_lowercase();
        if keyword.is_empty() {
            return Err(HintError::EmptyKeyword);
        }
        self.hints.push(Hint {
            keyword,
            category,
            confidence,
        });
        Ok(self)
    }
}

impl Default for CategoryHints {
    /// Foundation keywords in the languages most corporate sites use.
    fn default() -> Self {
        let mut hints = CategoryHints::empty();
        for kw in [
            "fundacion",
            "fundacio",
            "fundacao",
            "foundation",
            "fondation",
            "fondazione",
            "stiftung",
            "fundatia",
        ] {
            hints.hints.push(Hint {
                keyword: kw.to_owned(),
                category: Category::Foundation,
                confidence: 0.7,
            });
        }
        hints
    }
}

/// Suggests a category for `host` given the organization's corporate hosts.
///
/// Same label under a different public suffix reads as a territorial
/// delegation (`acciona.com.br` next to `acciona.com`). Otherwise the keyword
/// table is consulted, and without any signal the answer is a low-confidence
/// `OTHER`. Never returns `CORPORATE`.
pub fn suggest_category<'a>(
    host: &Host,
    corporate_hosts: impl IntoIterator<Item = &'a Host>,
    hints: &CategoryHints,
) -> Suggestion {
    let delegation = corporate_hosts
        .into_iter()
        .any(|c| c != host && c.label() == host.label() && c.suffix() != host.suffix());
    if delegation {
        return Suggestion {
            category: Category::Delegation,
            confidence: DELEGATION_CONFIDENCE,
        };
    }
    let label = host.label();
    hints
        .hints
        .iter()
        .find(|h| label.contains(&h.keyword))
        .map(|h| Suggestion {
            category: h.category,
            confidence: h.confidence,
        })
        .unwrap_or(Suggestion {
            category: Category::Other,
            confidence: NO_SIGNAL_CONFIDENCE,
        })
}
