//! Organization registry: loading, validation and byte-stable emission.
//!
//! The human-edited form is TOML, either one file with `[[organization]]`
//! tables or a directory holding one `.toml` document per organization. A JSON
//! mirror with the same shape is read and written as well.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::suggest::{suggest_category, CategoryHints};
use super::{Category, Host, HostError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebDomainRecord {
    pub host: Host,
    pub category: Category,
    #[serde(default)]
    pub label: String,
    /// Source URL the domain was found on, or `"manual"`.
    #[serde(default = "manual")]
    pub discovered_from: String,
}

fn manual() -> String {
    "manual".to_owned()
}

impl WebDomainRecord {
    pub fn new(host: Host, category: Category) -> Self {
        WebDomainRecord {
            host,
            category,
            label: String::new(),
            discovered_from: manual(),
        }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_owned();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrganizationRecord {
    pub id: String,
    pub name: String,
    pub sector: String,
    pub domains: Vec<WebDomainRecord>,
}

impl OrganizationRecord {
    pub fn hosts(&self) -> impl Iterator<Item = &Host> {
        self.domains.iter().map(|d| &d.host)
    }

    pub fn corporate_hosts(&self) -> impl Iterator<Item = &Host> {
        self.domains
            .iter()
            .filter(|d| d.category == Category::Corporate)
            .map(|d| &d.host)
    }

    /// The first-listed corporate domain; the reference site for
    /// contribution figures.
    pub fn primary_corporate(&self) -> Option<&WebDomainRecord> {
        self.domains
            .iter()
            .find(|d| d.category == Category::Corporate)
    }

    pub fn domain(&self, host: &Host) -> Option<&WebDomainRecord> {
        self.domains.iter().find(|d| &d.host == host)
    }

    pub fn contains(&self, host: &Host) -> bool {
        self.domain(host).is_some()
    }

    pub fn validate(&self) -> Result<(), RegistryError> {
        if self.id.is_empty()
            || !self
                .id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.')
        {
            return Err(RegistryError::InvalidId(self.id.clone()));
        }
        if self.primary_corporate().is_none() {
            return Err(RegistryError::NoCorporateDomain(self.id.clone()));
        }
        let mut seen = HashSet::new();
        for d in &self.domains {
            if !seen.insert(&d.host) {
                return Err(RegistryError::DuplicateHost {
                    org: self.id.clone(),
                    host: d.host.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("organization {org}: {source}")]
    Host { org: String, source: HostError },
    #[error("organization {org}, host {host}: unknown category {category:?}")]
    UnknownCategory {
        org: String,
        host: String,
        category: String,
    },
    #[error("invalid organization id {0:?}")]
    InvalidId(String),
    #[error("organization {0} declares no CORPORATE domain")]
    NoCorporateDomain(String),
    #[error("organization {org} lists {host} twice")]
    DuplicateHost { org: String, host: String },
    #[error("organization id {0} appears twice")]
    DuplicateOrganization(String),
    #[error(
        "organization {org}, host {host}: suggested {suggested} at confidence {confidence:.2} must be confirmed in the registry"
    )]
    UnconfirmedCategory {
        org: String,
        host: String,
        suggested: Category,
        confidence: f64,
    },
}

/// A validated set of organizations, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Registry {
    pub organizations: Vec<OrganizationRecord>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct RegistryDoc {
    #[serde(default, alias = "organizations")]
    organization: Vec<OrgDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OrgDoc {
    id: String,
    name: String,
    #[serde(default)]
    sector: String,
    #[serde(default, alias = "domains")]
    domain: Vec<DomainDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DomainDoc {
    host: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    discovered_from: Option<String>,
}

impl Registry {
    pub fn new(organizations: Vec<OrganizationRecord>) -> Result<Self, RegistryError> {
        let mut ids = HashSet::new();
        for org in &organizations {
            org.validate()?;
            if !ids.insert(org.id.as_str()) {
                return Err(RegistryError::DuplicateOrganization(org.id.clone()));
            }
        }
        Ok(Registry { organizations })
    }

    /// Loads a `.toml` file, a `.json` mirror, or a directory of per-organization
    /// `.toml` documents.
    pub fn load(path: &Path) -> Result<Self, RegistryError> {
        Self::load_with_hints(path, &CategoryHints::default())
    }

    pub fn load_with_hints(path: &Path, hints: &CategoryHints) -> Result<Self, RegistryError> {
        let doc = if path.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(path)
                .map_err(|source| io_err(path, source))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|e| e == "toml"))
                .collect();
            files.sort();
            let mut doc = RegistryDoc::default();
            for file in files {
                let text = read(&file)?;
                let org: OrgDoc = toml::from_str(&text).map_err(|e| parse_err(&file, e))?;
                doc.organization.push(org);
            }
            doc
        } else {
            let text = read(path)?;
            if path.extension().is_some_and(|e| e == "json") {
                serde_json::from_str(&text).map_err(|e| parse_err(path, e))?
            } else {
                toml::from_str(&text).map_err(|e| parse_err(path, e))?
            }
        };
        Self::from_doc(doc, hints)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, RegistryError> {
        let doc: RegistryDoc =
            toml::from_str(text).map_err(|e| parse_err(Path::new("<string>"), e))?;
        Self::from_doc(doc, &CategoryHints::default())
    }

    pub fn from_json_str(text: &str) -> Result<Self, RegistryError> {
        let doc: RegistryDoc =
            serde_json::from_str(text).map_err(|e| parse_err(Path::new("<string>"), e))?;
        Self::from_doc(doc, &CategoryHints::default())
    }

    fn from_doc(doc: RegistryDoc, hints: &CategoryHints) -> Result<Self, RegistryError> {
        let mut orgs = Vec::with_capacity(doc.organization.len());
        for org in doc.organization {
            let mut declared = Vec::new();
            let mut pending = Vec::new();
            for (pos, d) in org.domain.into_iter().enumerate() {
                let host = Host::parse(&d.host).map_err(|source| RegistryError::Host {
                    org: org.id.clone(),
                    source,
                })?;
                let category = d
                    .category
                    .as_deref()
                    .map(|c| {
                        c.parse::<Category>()
                            .map_err(|_| RegistryError::UnknownCategory {
                                org: org.id.clone(),
                                host: host.to_string(),
                                category: c.to_owned(),
                            })
                    })
                    .transpose()?;
                let record = WebDomainRecord {
                    host,
                    category: category.unwrap_or(Category::Other),
                    label: d.label.unwrap_or_default(),
                    discovered_from: d.discovered_from.unwrap_or_else(manual),
                };
                if category.is_some() {
                    declared.push((pos, record));
                } else {
                    pending.push((pos, record));
                }
            }
            let corporate: Vec<Host> = declared
                .iter()
                .filter(|(_, r)| r.category == Category::Corporate)
                .map(|(_, r)| r.host.clone())
                .collect();
            for (_, record) in &mut pending {
                let s = suggest_category(&record.host, &corporate, hints);
                if s.needs_confirmation() {
                    return Err(RegistryError::UnconfirmedCategory {
                        org: org.id.clone(),
                        host: record.host.to_string(),
                        suggested: s.category,
                        confidence: s.confidence,
                    });
                }
                record.category = s.category;
            }
            let mut domains: Vec<(usize, WebDomainRecord)> =
                declared.into_iter().chain(pending).collect();
            domains.sort_by_key(|(pos, _)| *pos);
            orgs.push(OrganizationRecord {
                id: org.id,
                name: org.name,
                sector: org.sector,
                domains: domains.into_iter().map(|(_, r)| r).collect(),
            });
        }
        Registry::new(orgs)
    }

    fn to_doc(&self) -> RegistryDoc {
        RegistryDoc {
            organization: self
                .organizations
                .iter()
                .map(|o| OrgDoc {
                    id: o.id.clone(),
                    name: o.name.clone(),
                    sector: o.sector.clone(),
                    domain: o
                        .domains
                        .iter()
                        .map(|d| DomainDoc {
                            host: d.host.to_string(),
                            category: Some(d.category.to_string()),
                            label: Some(d.label.clone()),
                            discovered_from: Some(d.discovered_from.clone()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Pretty JSON with sorted keys and LF line endings, newline-terminated.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_doc()).expect("registry serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_doc()).expect("registry serializes")
    }

    pub fn get(&self, id: &str) -> Option<&OrganizationRecord> {
        self.organizations.iter().find(|o| o.id == id)
    }

    pub fn len(&self) -> usize {
        self.organizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.organizations.is_empty()
    }
}

fn read(path: &Path) -> Result<String, RegistryError> {
    fs::read_to_string(path).map_err(|source| io_err(path, source))
}

fn io_err(path: &Path, source: std::io::Error) -> RegistryError {
    RegistryError::Io {
        path: path.to_owned(),
        source,
    }
}

fn parse_err(path: &Path, e: impl std::fmt::Display) -> RegistryError {
    RegistryError::Parse {
        path: path.to_owned(),
        message: e.to_string().lines().next().unwrap_or_default().to_owned(),
    }
}
