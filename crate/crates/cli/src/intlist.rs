//! Integer list arguments: comma-separated items, each a single integer or
//! an inclusive range `a..b` / `a..=b`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

pub fn parse_int_list_arg(text: &str) -> Result<IntList, String> {
    parse_int_list(text).map(IntList)
}

pub fn parse_int_list(text: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty item in {text:?}"));
        }
        match item.split_once("..") {
            None => out.push(parse_int(item)?),
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let (lo, hi) = (parse_int(lo)?, parse_int(hi)?);
                if lo > hi {
                    return Err(format!("empty range {item:?}"));
                }
                if hi - lo > 10_000_000 {
                    return Err(format!("range {item:?} is too long"));
                }
                out.extend(lo..=hi);
            }
        }
    }
    Ok(out)
}

fn parse_int(s: &str) -> Result<i64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("not an integer: {s:?}"))
}
