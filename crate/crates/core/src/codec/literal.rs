//! Textual forms of codes and sets: `wfe:{(0,1)}`, `wfe:3:{(0,1)}`,
//! `bits:001`, `{{},{{}}}` and `ack:3`.

use num_bigint::BigUint;
use thiserror::Error;

use super::hfset::HfSet;
use super::wfe::WfeCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad code literal at byte {pos}: {message}")]
pub struct LiteralError {
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodecLiteral {
    Code(WfeCode),
    Set(HfSet),
}

fn err(pos: usize, message: impl Into<String>) -> LiteralError {
    LiteralError { pos, message: message.into() }
}

pub fn parse_codec_literal(text: &str) -> Result<CodecLiteral, LiteralError> {
    let t = text.trim();
    let off = text.len() - text.trim_start().len();
    if let Some(rest) = t.strip_prefix("wfe:") {
        parse_wfe(rest, off + 4).map(CodecLiteral::Code)
    } else if let Some(rest) = t.strip_prefix("bits:") {
        WfeCode::from_bits(rest).map(CodecLiteral::Code).map_err(|e| err(off + 5, e.to_string()))
    } else if let Some(rest) = t.strip_prefix("ack:") {
        let n: BigUint = rest.parse().map_err(|_| err(off + 4, "expected a decimal integer"))?;
        if n.bits() > 20 {
            return Err(err(off + 4, "Ackermann code too large (at most 20 bits)"));
        }
        Ok(CodecLiteral::Set(HfSet::from_ack(&n)))
    } else if t.starts_with('{') {
        t.parse::<HfSet>().map(CodecLiteral::Set).map_err(|e| err(off + e.pos, e.message))
    } else {
        Err(err(off, "expected `wfe:`, `bits:`, `ack:` or a brace set"))
    }
}

fn parse_wfe(s: &str, base: usize) -> Result<WfeCode, LiteralError> {
    let (nodes, body, base) = match s.find(':') {
        Some(i) => {
            let n: usize = s[..i].trim().parse().map_err(|_| err(base, "expected a node count"))?;
            (Some(n), &s[i + 1..], base + i + 1)
        }
        None => (None, s, base),
    };
    let chars: Vec<(usize, char)> = body.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut i = 0;
    let at = |i: usize| base + chars.get(i).map_or(body.len(), |&(p, _)| p);
    let expect = |i: &mut usize, c: char| -> Result<(), LiteralError> {
        match chars.get(*i) {
            Some(&(_, x)) if x == c => {
                *i += 1;
                Ok(())
            }
            _ => Err(err(at(*i), format!("expected `{c}`"))),
        }
    };
    let number = |i: &mut usize| -> Result<usize, LiteralError> {
        let start = *i;
        while chars.get(*i).is_some_and(|(_, c)| c.is_ascii_digit()) {
            *i += 1;
        }
        let digits: String = chars[start..*i].iter().map(|&(_, c)| c).collect();
        digits.parse().map_err(|_| err(at(start), "expected a node number"))
    };
    expect(&mut i, '{')?;
    let mut edges = Vec::new();
    if chars.get(i).map(|&(_, c)| c) != Some('}') {
        loop {
            expect(&mut i, '(')?;
            let k = number(&mut i)?;
            expect(&mut i, ',')?;
            let j = number(&mut i)?;
            expect(&mut i, ')')?;
            edges.push((k, j));
            match chars.get(i).map(|&(_, c)| c) {
                Some(',') => i += 1,
                _ => break,
            }
        }
    }
    expect(&mut i, '}')?;
    if i < chars.len() {
        return Err(err(at(i), "trailing input"));
    }
    match nodes {
        Some(n) => WfeCode::new(n, edges).map_err(|e| err(base, e.to_string())),
        None => Ok(WfeCode::from_edges(edges)),
    }
}
