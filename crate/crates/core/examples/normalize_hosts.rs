//! Reduce raw URLs and host strings to registrable domains.

use domainscope::domain::{normalize_host, suffix_list_version};

fn main() {
    println!("public suffix list {}", suffix_list_version());
    for raw in [
        "http://www.acciona-engineering.com/a",
        "HTTPS://Santander.CO.UK:443/es?x=1#top",
        "sub.x.com",
        "bbc.co.uk.",
        "http://www.fundación-telefónica.es/",
        "telefonica.unknownsuffix",
        "co.uk",
    ] {
        match normalize_host(raw) {
            Ok(n) if n.known_suffix => println!("{raw:45} -> {}", n.host),
            Ok(n) => println!("{raw:45} -> {} (suffix not on the list)", n.host),
            Err(e) => println!("{raw:45} !! {e}"),
        }
    }
}
