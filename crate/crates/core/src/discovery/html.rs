//! Byte decoding and link extraction for fetched pages.

use std::collections::BTreeMap;

use encoding_rs::{Encoding, UTF_8, WINDOWS_1252};
use scraper::{Html, Selector};
use thiserror::Error;
use url::Url;

use crate::domain::{normalize_host, Host};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("page has no recoverable text: {0}")]
pub struct DecodeError(pub String);

const SNIFF_LEN: usize = 1024;

fn charset_param(content_type: &str) -> Option<&str> {
    content_type.split(';').skip(1).find_map(|p| {
        let (k, v) = p.split_once('=')?;
        k.trim()
            .eq_ignore_ascii_case("charset")
            .then(|| v.trim().trim_matches('"'))
    })
}

/// `<meta charset=...>` or `<meta http-equiv content="...; charset=...">` in
/// the first kilobyte.
fn meta_charset(head: &[u8]) -> Option<&'static Encoding> {
    let text = String::from_utf8_lossy(head).to_ascii_lowercase();
    let at = text.find("charset=")? + "charset=".len();
    let label: String = text[at..]
        .trim_start_matches(['"', '\''])
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':' | '.'))
        .collect();
    Encoding::for_label(label.as_bytes())
}

/// Decodes a document: BOM, then the Content-Type charset, then a meta
/// declaration, then UTF-8 if valid, else windows-1252.
pub fn decode_page(bytes: &[u8], content_type: Option<&str>) -> Result<String, DecodeError> {
    let head = &bytes[..bytes.len().min(SNIFF_LEN)];
    if head.contains(&0) {
        return Err(DecodeError(
            "NUL bytes in the first kilobyte; binary content".into(),
        ));
    }
    let declared = Encoding::for_bom(bytes)
        .map(|(e, _)| e)
        .or_else(|| {
            content_type
                .and_then(charset_param)
                .and_then(|l| Encoding::for_label(l.as_bytes()))
        })
        .or_else(|| meta_charset(head));
    let enc = match declared {
        Some(e) => e,
        None if std::str::from_utf8(bytes).is_ok() => UTF_8,
        None => WINDOWS_1252,
    };
    let (text, _, _) = enc.decode(bytes);
    Ok(text.into_owned())
}

/// Links found on one page.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outlinks {
    /// Foreign registrable domains with the anchor texts pointing at them,
    /// in document order without repeats.
    pub external: BTreeMap<Host, Vec<String>>,
    /// Same-domain URLs, fragments removed, in document order without
    /// repeats.
    pub frontier: Vec<Url>,
}

fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// `rel` values that name a page resource rather than another page.
const RESOURCE_RELS: [&str; 8] = [
    "stylesheet",
    "icon",
    "preload",
    "prefetch",
    "dns-prefetch",
    "preconnect",
    "modulepreload",
    "apple-touch-icon",
];

pub fn extract_outlink_hosts(
    html: &[u8],
    base: &Url,
    content_type: Option<&str>,
) -> Result<Outlinks, DecodeError> {
    let text = decode_page(html, content_type)?;
    let doc = Html::parse_document(&text);
    let home = base
        .host_str()
        .and_then(|h| normalize_host(h).ok())
        .map(|n| n.host);
    let base_sel = Selector::parse("base[href]").expect("static selector");
    let base = doc
        .select(&base_sel)
        .next()
        .and_then(|b| base.join(b.value().attr("href")?).ok())
        .unwrap_or_else(|| base.clone());
    let link_sel = Selector::parse("a[href], area[href], link[href]").expect("static selector");
    let mut out = Outlinks::default();
    for el in doc.select(&link_sel) {
        let v = el.value();
        if v.name() == "link" {
            let rel = v.attr("rel").unwrap_or("").to_ascii_lowercase();
            if rel.split_whitespace().any(|r| RESOURCE_RELS.contains(&r)) {
                continue;
            }
        }
        let Some(mut url) = v.attr("href").and_then(|h| base.join(h.trim()).ok()) else {
            continue;
        };
        if !matches!(url.scheme(), "http" | "https") {
            continue;
        }
        let Some(host) = url
            .host_str()
            .and_then(|h| normalize_host(h).ok())
            .map(|n| n.host)
        else {
            continue;
        };
        if Some(&host) == home.as_ref() {
            url.set_fragment(None);
            if !out.frontier.contains(&url) {
                out.frontier.push(url);
            }
            continue;
        }
        let anchor = match v.name() {
            "a" => collapse_ws(&el.text().collect::<String>()),
            "area" => collapse_ws(v.attr("alt").unwrap_or("")),
            _ => String::new(),
        };
        let anchors = out.external.entry(host).or_default();
        if !anchors.contains(&anchor) {
            anchors.push(anchor);
        }
    }
    Ok(out)
}
