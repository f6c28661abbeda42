//! Element expressions.
//!
//! ```text
//! elt  := term (['*'] term)*
//! term := 't[' int (',' int)* ']' | 's' index | 'tau' ['^' int] | '1'
//! ```
//! Whitespace is ignored between tokens, and juxtaposed terms multiply.
//! Translations are written in ambient coordinates.

use crate::error::{Error, Result};

use super::{AffineElt, AffineWeyl, GenKind};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "expected an integer"))
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "expected a reflection index"))
    }
}

pub fn parse_element(aw: &AffineWeyl, text: &str) -> Result<AffineElt> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut acc = aw.identity();
    let mut terms = 0;
    loop {
        match lx.peek() {
            None => break,
            Some(b'*') if terms > 0 => {
                lx.pos += 1;
                if lx.peek().is_none() {
                    return Err(Error::parse(lx.pos, "dangling `*`"));
                }
            }
            Some(_) => {
                let t = term(aw, &mut lx)?;
                acc = aw.mul(&acc, &t);
                terms += 1;
            }
        }
    }
    if terms == 0 {
        return Err(Error::parse(0, "empty element expression"));
    }
    Ok(acc)
}

fn term(aw: &AffineWeyl, lx: &mut Lexer<'_>) -> Result<AffineElt> {
    let start = lx.pos;
    let rest = &lx.src[lx.pos..];
    if rest.starts_with(b"tau") {
        lx.pos += 3;
        let k = if lx.peek() == Some(b'^') {
            lx.pos += 1;
            lx.int()?
        } else {
            1
        };
        return Ok(aw.pow(&aw.tau(), k));
    }
    match rest.first() {
        Some(b's') => {
            lx.pos += 1;
            let i = lx.digits()?;
            if i >= aw.num_generators() {
                return Err(Error::parse(
                    start,
                    format!("reflection index s{i} out of range (0..{})", aw.num_generators() - 1),
                ));
            }
            Ok(aw.generator(i))
        }
        Some(b't') => {
            lx.pos += 1;
            lx.expect(b'[')?;
            let mut coords = vec![lx.int()?];
            while lx.peek() == Some(b',') {
                lx.pos += 1;
                coords.push(lx.int()?);
            }
            lx.expect(b']')?;
            let lam = aw
                .root_datum()
                .from_ambient(&coords)
                .map_err(|e| Error::parse(start, e.to_string()))?;
            Ok(aw.translation(&lam))
        }
        Some(b'1') if !rest.get(1).is_some_and(u8::is_ascii_digit) => {
            lx.pos += 1;
            Ok(aw.identity())
        }
        _ => Err(Error::parse(start, "expected `t[`, `s<index>`, `tau` or `1`")),
    }
}

impl AffineWeyl {
    /// Canonical printed form; re-parses to the same element.
    pub fn format(&self, w: &AffineElt) -> String {
        let (word, tau) = self.reduced_word(w);
        let mut parts: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
        if tau != self.identity() {
            match self.tau_power(&tau) {
                Some(1) => parts.push("tau".into()),
                Some(k) => parts.push(format!("tau^{k}")),
                None => {
                    let amb = self.root_datum().to_ambient(&self.lambda(&tau));
                    let coords: Vec<String> = amb.iter().map(|x| x.to_string()).collect();
                    parts.push(format!("t[{}]", coords.join(",")));
                    for &j in self.finite_weyl().word(tau.u) {
                        let g = self
                            .generator_of_kind(GenKind::Finite(j - 1))
                            .expect("finite generator exists");
                        parts.push(format!("s{g}"));
                    }
                }
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// k with τ^k = x for a length-zero x, when Ω is cyclic and generated by `tau`.
    pub fn tau_power(&self, x: &AffineElt) -> Option<i64> {
        let orders = self.omega_group().orders();
        if orders.len() != 1 {
            return None;
        }
        let ct = self.omega_class(&self.tau())[0];
        let cx = self.omega_class(x)[0];
        let d = orders[0];
        if d == 0 {
            (ct == 1).then_some(cx)
        } else {
            (1..d).find(|k| (k * ct).rem_euclid(d) == cx)
        }
    }
}

/// Short label `s1201` for elements of W_a with all indices below ten.
pub fn compact_label(aw: &AffineWeyl, w: &AffineElt) -> Option<String> {
    let (word, tau) = aw.reduced_word(w);
    if tau != aw.identity() || word.iter().any(|&i| i > 9) {
        return None;
    }
    if word.is_empty() {
        return Some("1".into());
    }
    Some(format!("s{}", word.iter().map(|i| i.to_string()).collect::<String>()))
}

/// Parses a short label such as `s1201232101`, `1201` or `1`.
pub fn parse_compact(aw: &AffineWeyl, label: &str) -> Result<AffineElt> {
    let digits = label.trim().trim_start_matches('s');
    if digits == "1" && label.trim() == "1" {
        return Ok(aw.identity());
    }
    let mut acc = aw.identity();
    for (pos, c) in digits.char_indices() {
        let i = c
            .to_digit(10)
            .ok_or_else(|| Error::parse(pos, "expected a digit"))? as usize;
        if i >= aw.num_generators() {
            return Err(Error::parse(pos, format!("reflection index s{i} out of range")));
        }
        acc = aw.mul(&acc, &aw.generator(i));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_terms() {
        let aw = AffineWeyl::preset("GL3").unwrap();
        let a = parse_element(&aw, "t[1,0,0] * s1").unwrap();
        assert_eq!(a, aw.mul(&aw.translation(&[1, 0, 0]), &aw.generator(1)));
        let b = parse_element(&aw, "s1 s2 s0 s1").unwrap();
        assert_eq!(b, aw.word_elt(&[1, 2, 0, 1]));
        assert_eq!(parse_element(&aw, "tau^3").unwrap(), aw.translation(&[1, 1, 1]));
        assert_eq!(parse_element(&aw, "1").unwrap(), aw.identity());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let aw = AffineWeyl::preset("SL4").unwrap();
        assert_eq!(
            parse_element(&aw, "s1 s9").unwrap_err(),
            Error::parse(3, "reflection index s9 out of range (0..3)")
        );
        assert!(matches!(parse_element(&aw, ""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element(&aw, "t[1,0]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&aw, "s1 *"), Err(Error::Parse { .. })));
    }

    #[test]
    fn format_round_trips() {
        for name in ["GL3", "SL3", "PGL3", "Sp4", "SO5"] {
            let aw = AffineWeyl::preset(name).unwrap();
            for w in aw.enumerate_by_length(4, 2, &Default::default()).unwrap() {
                let s = aw.format(&w);
                assert_eq!(parse_element(&aw, &s).unwrap(), w, "{name}: {s}");
            }
        }
    }

    #[test]
    fn compact_labels() {
        let aw = AffineWeyl::preset("SL4").unwrap();
        let w = parse_compact(&aw, "s1201232101").unwrap();
        assert_eq!(aw.length(&w), 10);
        assert_eq!(compact_label(&aw, &aw.generator(2)).as_deref(), Some("s2"));
    }
}
