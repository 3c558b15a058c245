//! Shared helpers for the integration tests: a minimal XML well-formedness
//! checker (strict enough for the SVGs this crate emits) and a tiny
//! deterministic RNG so randomized tests stay reproducible without an extra
//! dependency.
//!
//! Each integration target pulls in this module separately and uses a
//! different subset of it.
#![allow(dead_code)]

/// splitmix64 — a 64-bit mixer with full-period state increment.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in [0, bound).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// True with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b':' | b'-' | b'_' | b'.')
}

/// Validates a character entity starting at `i` (which points at `&`).
/// Returns the index just past the terminating `;`.
fn check_entity(text: &str, i: usize) -> Result<usize, String> {
    let rest = &text[i..];
    let semi = rest
        .find(';')
        .ok_or_else(|| format!("unterminated entity at byte {i}"))?;
    let body = &rest[1..semi];
    let numeric = |s: &str, radix: u32| !s.is_empty() && s.chars().all(|c| c.is_digit(radix));
    let ok = matches!(body, "amp" | "lt" | "gt" | "quot" | "apos")
        || body.strip_prefix("#x").is_some_and(|h| numeric(h, 16))
        || body
            .strip_prefix('#')
            .is_some_and(|d| !d.starts_with('x') && numeric(d, 10));
    if ok {
        Ok(i + semi + 1)
    } else {
        Err(format!("unknown entity &{body}; at byte {i}"))
    }
}

/// Parses one tag starting at `start` (which points at `<` of an opening or
/// self-closing tag). Returns (index past `>`, tag name, self_closing).
fn parse_open_tag(text: &str, start: usize) -> Result<(usize, String, bool), String> {
    let bytes = text.as_bytes();
    let mut i = start + 1;
    let name_start = i;
    while i < bytes.len() && is_name_byte(bytes[i]) {
        i += 1;
    }
    if i == name_start {
        return Err(format!("missing tag name at byte {start}"));
    }
    let name = text[name_start..i].to_string();
    let mut attr_names: Vec<String> = Vec::new();
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        match bytes.get(i) {
            None => return Err(format!("unterminated tag <{name}")),
            Some(b'>') => return Ok((i + 1, name, false)),
            Some(b'/') => {
                return if bytes.get(i + 1) == Some(&b'>') {
                    Ok((i + 2, name, true))
                } else {
                    Err(format!("stray '/' inside tag <{name}"))
                };
            }
            Some(_) => {
                // Attribute: name="value" or name='value'.
                let an_start = i;
                while i < bytes.len() && is_name_byte(bytes[i]) {
                    i += 1;
                }
                if i == an_start {
                    return Err(format!("malformed attribute in <{name} at byte {i}"));
                }
                let attr = text[an_start..i].to_string();
                if attr_names.contains(&attr) {
                    return Err(format!("duplicate attribute {attr} in <{name}"));
                }
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                if bytes.get(i) != Some(&b'=') {
                    return Err(format!("attribute {attr} in <{name} has no value"));
                }
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                let quote = match bytes.get(i) {
                    Some(&q @ (b'"' | b'\'')) => q,
                    _ => return Err(format!("attribute {attr} value is not quoted")),
                };
                i += 1;
                loop {
                    match bytes.get(i) {
                        None => return Err(format!("unterminated value for {attr}")),
                        Some(&q) if q == quote => {
                            i += 1;
                            break;
                        }
                        Some(b'<') => {
                            return Err(format!("raw '<' inside value of {attr}"));
                        }
                        Some(b'&') => i = check_entity(text, i)?,
                        Some(_) => i += 1,
                    }
                }
                attr_names.push(attr);
            }
        }
    }
}

/// Checks that `text` is a well-formed XML document fragment: one root
/// element, properly nested and matched tags, quoted attribute values
/// without duplicates, and only valid character entities. Comments and
/// processing instructions are skipped; doctypes and CDATA are rejected
/// (the SVGs under test never contain them).
pub fn check_xml(text: &str) -> Result<(), String> {
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let mut stack: Vec<String> = Vec::new();
    let mut roots = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'<' => {
                if text[i..].starts_with("<!--") {
                    match text[i + 4..].find("-->") {
                        Some(end) => i += 4 + end + 3,
                        None => return Err(format!("unterminated comment at byte {i}")),
                    }
                } else if text[i..].starts_with("<?") {
                    match text[i + 2..].find("?>") {
                        Some(end) => i += 2 + end + 2,
                        None => return Err(format!("unterminated declaration at byte {i}")),
                    }
                } else if text[i..].starts_with("<!") {
                    return Err(format!("unsupported markup at byte {i}"));
                } else if bytes.get(i + 1) == Some(&b'/') {
                    let rel = text[i..]
                        .find('>')
                        .ok_or_else(|| format!("unterminated closing tag at byte {i}"))?;
                    let name = text[i + 2..i + rel].trim();
                    match stack.pop() {
                        Some(open) if open == name => {}
                        Some(open) => {
                            return Err(format!("</{name}> closes <{open}> at byte {i}"));
                        }
                        None => return Err(format!("</{name}> with nothing open at byte {i}")),
                    }
                    i += rel + 1;
                } else {
                    let (next, name, self_closing) = parse_open_tag(text, i)?;
                    if stack.is_empty() {
                        roots += 1;
                        if roots > 1 {
                            return Err(format!("second root element <{name} at byte {i}"));
                        }
                    }
                    if !self_closing {
                        stack.push(name);
                    }
                    i = next;
                }
            }
            b'&' => i = check_entity(text, i)?,
            _ => {
                if !stack.is_empty() || bytes[i].is_ascii_whitespace() {
                    i += 1;
                } else {
                    return Err(format!("text outside the root element at byte {i}"));
                }
            }
        }
    }
    if let Some(open) = stack.pop() {
        return Err(format!("<{open}> is never closed"));
    }
    if roots == 0 {
        return Err("no root element".into());
    }
    Ok(())
}
