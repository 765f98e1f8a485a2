use quick_xml::escape::resolve_predefined_entity;
use quick_xml::events::Event;
use quick_xml::Reader;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sitemap {
    /// `<url><loc>` entries.
    pub pages: Vec<String>,
    /// `<sitemap><loc>` entries of a sitemap index.
    pub children: Vec<String>,
}

/// Reads a `urlset` or `sitemapindex` document. Malformed XML yields what was
/// read before the error.
pub fn parse_sitemap(xml: &str) -> Sitemap {
    let mut reader = Reader::from_str(xml);
    reader.config_mut().trim_text(true);
    let mut out = Sitemap::default();
    let mut in_sitemap = false;
    let mut loc: Option<String> = None;
    loop {
        match reader.read_event() {
            Ok(Event::Start(e)) => match e.local_name().as_ref() {
                "sitemap" => in_sitemap = true,
                "loc" => loc = Some(String::new()),
                _ => {}
            },
            Ok(Event::End(e)) => match e.local_name().as_ref() {
                "sitemap" => in_sitemap = false,
                "loc" => {
                    if let Some(l) = loc.take() {
                        let l = l.trim().to_owned();
                        if in_sitemap {
                            out.children.push(l);
                        } else {
                            out.pages.push(l);
                        }
                    }
                }
                _ => {}
            },
            Ok(Event::Text(t)) => {
                if let Some(l) = loc.as_mut() {
                    l.push_str(&t.xml10_content());
                }
            }
            Ok(Event::CData(t)) => {
                if let Some(l) = loc.as_mut() {
                    l.push_str(&t.into_inner());
                }
            }
            Ok(Event::GeneralRef(r)) => {
                if let Some(l) = loc.as_mut() {
                    match r.resolve_char_ref() {
                        Ok(Some(c)) => l.push(c),
                        _ => l.push_str(resolve_predefined_entity(&r).unwrap_or("")),
                    }
                }
            }
            Ok(Event::Eof) | Err(_) => break,
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn urlset_and_index() {
        let set = r#"<?xml version="1.0"?><urlset xmlns="http://www.sitemaps.org/schemas/sitemap/0.9">
            <url><loc>https://a.com/x</loc></url><url><loc> https://a.com/y?a=1&amp;b=2 </loc></url></urlset>"#;
        assert_eq!(
            parse_sitemap(set).pages,
            ["https://a.com/x", "https://a.com/y?a=1&b=2"]
        );
        let idx =
            r#"<sitemapindex><sitemap><loc>https://a.com/s1.xml</loc></sitemap></sitemapindex>"#;
        let s = parse_sitemap(idx);
        assert_eq!(s.children, ["https://a.com/s1.xml"]);
        assert!(s.pages.is_empty());
        assert_eq!(
            parse_sitemap("<urlset><url><loc>https://a.com/</loc></url><broken")
                .pages
                .len(),
            1
        );
    }
}
