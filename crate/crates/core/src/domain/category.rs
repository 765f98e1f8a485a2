use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Web-domain categories an organization's domains are filed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Category {
    /// Official site carrying the corporate and financial information.
    Corporate,
    /// A territorial delegation.
    Delegation,
    /// An affiliate or associate company.
    Related,
    /// A particular product or brand.
    BrandProduct,
    /// A section, department or line of work.
    Division,
    /// A B2C or B2B service.
    Service,
    /// A foundation associated with the organization.
    Foundation,
    /// Anything else: blogs, sponsorship, ticketing, museums and the like.
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown category {0:?}")]
pub struct UnknownCategory(pub String);

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Corporate,
        Category::Delegation,
        Category::Related,
        Category::BrandProduct,
        Category::Division,
        Category::Service,
        Category::Foundation,
        Category::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Corporate => "CORPORATE",
            Category::Delegation => "DELEGATION",
            Category::Related => "RELATED",
            Category::BrandProduct => "BRAND_PRODUCT",
            Category::Division => "DIVISION",
            Category::Service => "SERVICE",
            Category::Foundation => "FOUNDATION",
            Category::Other => "OTHER",
        }
    }

    /// Three-letter column code used in census tables.
    pub fn code(self) -> &'static str {
        match self {
            Category::Corporate => "COR",
            Category::Delegation => "DEL",
            Category::Related => "REL",
            Category::BrandProduct => "BRA",
            Category::Division => "DIV",
            Category::Service => "SER",
            Category::Foundation => "FOU",
            Category::Other => "OTH",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = UnknownCategory;

    /// Case-insensitive. Besides the canonical names, the short column codes
    /// and a few spelled-out variants are accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .trim()
            .chars()
            .map(|c| {
                if c == ' ' || c == '-' || c == '&' {
                    '_'
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect();
        let key = key
            .split('_')
            .filter(|p| !p.is_empty())
            .collect::<Vec<_>>()
            .join("_");
        let cat = match key.as_str() {
            "CORPORATE" | "CORPORATIVE" | "COR" => Category::Corporate,
            "DELEGATION" | "DEL" => Category::Delegation,
            "RELATED" | "RELATED_COMPANY" | "VINCULATED" | "REL" => Category::Related,
            "BRAND_PRODUCT" | "BRAND_AND_PRODUCT" | "BRANDS_AND_PRODUCTS" | "BRA" => {
                Category::BrandProduct
            }
            "DIVISION" | "DIV" => Category::Division,
            "SERVICE" | "SER" => Category::Service,
            "FOUNDATION" | "FOU" => Category::Foundation,
            "OTHER" | "OTHERS" | "OTH" => Category::Other,
            _ => return Err(UnknownCategory(s.to_owned())),
        };
        Ok(cat)
    }
}

impl TryFrom<String> for Category {
    type Error = UnknownCategory;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Category> for String {
    fn from(c: Category) -> String {
        c.as_str().to_owned()
    }
}

/// One counter per category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CategoryCounts([usize; 8]);

impl CategoryCounts {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Category, usize)> + '_ {
        Category::ALL.iter().map(move |&c| (c, self[c]))
    }

    pub fn add(&mut self, other: &CategoryCounts) {
        for c in Category::ALL {
            self[c] += other[c];
        }
    }
}

impl Index<Category> for CategoryCounts {
    type Output = usize;
    fn index(&self, c: Category) -> &usize {
        &self.0[c.index()]
    }
}

impl IndexMut<Category> for CategoryCounts {
    fn index_mut(&mut self, c: Category) -> &mut usize {
        &mut self.0[c.index()]
    }
}

impl Serialize for CategoryCounts {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(8))?;
        for (c, n) in self.iter() {
            map.serialize_entry(c.as_str(), &n)?;
        }
        map.end()
    }
}
