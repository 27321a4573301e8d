//! Dialect-aware tokenizer shared by the parser, the validators and the
//! n-gram benchmark.

use thiserror::Error;

use super::element::Element;
use super::graph::Chirality;

/// String dialects understood by the toolkit. The dialect decides whether
/// `&` and `^` are separators (tsis/tsid) or illegal characters (smiles/safe).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Smiles,
    Tsis,
    Tsid,
    Safe,
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Smiles => "smiles",
            Dialect::Tsis => "tsis",
            Dialect::Tsid => "tsid",
            Dialect::Safe => "safe",
        }
    }

    pub fn from_name(s: &str) -> Option<Dialect> {
        Some(match s {
            "smiles" => Dialect::Smiles,
            "tsis" => Dialect::Tsis,
            "tsid" => Dialect::Tsid,
            "safe" => Dialect::Safe,
            _ => return None,
        })
    }

    /// Whether `&`/`^` separate fragments in this dialect.
    pub fn has_separators(self) -> bool {
        matches!(self, Dialect::Tsis | Dialect::Tsid)
    }

    /// Whether ring closures may pair across a `.`.
    pub fn cross_dot_closures(self) -> bool {
        matches!(self, Dialect::Safe)
    }
}

impl std::fmt::Display for Dialect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Atom,
    BracketAtom,
    Bond,
    RingClosure,
    OpenParen,
    CloseParen,
    Dot,
    AmpSep,
    CaretSep,
}

/// One lexical unit. `position` is the character offset of the token start
/// in the source string (whitespace is skipped, never tokenized).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub position: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TokenizeError {
    #[error("unknown character at position {0}")]
    UnknownCharacter(usize),
    #[error("malformed bracket atom at position {0}")]
    MalformedBracketAtom(usize),
    #[error("malformed % ring closure at position {0}")]
    MalformedPercentClosure(usize),
}

impl TokenizeError {
    pub fn position(&self) -> usize {
        match *self {
            TokenizeError::UnknownCharacter(p)
            | TokenizeError::MalformedBracketAtom(p)
            | TokenizeError::MalformedPercentClosure(p) => p,
        }
    }
}

/// Fields of a validated bracket atom `[...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BracketFields {
    pub isotope: Option<u32>,
    pub element: Element,
    pub aromatic: bool,
    pub chirality: Option<Chirality>,
    pub explicit_h: u8,
    pub charge: i8,
}

/// Tokenize as far as possible; on a lexical error the tokens before the
/// error are still returned. `tokenize` is the strict wrapper.
pub(crate) fn tokenize_prefix(s: &str, dialect: Dialect) -> (Vec<Token>, Option<TokenizeError>) {
    let chars: Vec<char> = s.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            '[' => match scan_bracket(&chars, start) {
                Ok(end) => {
                    tokens.push(Token {
                        kind: TokenKind::BracketAtom,
                        text: chars[start..=end].iter().collect(),
                        position: start,
                    });
                    i = end + 1;
                    continue;
                }
                Err(e) => return (tokens, Some(e)),
            },
            '%' => {
                if i + 2 < chars.len() && chars[i + 1].is_ascii_digit() && chars[i + 2].is_ascii_digit() {
                    tokens.push(Token {
                        kind: TokenKind::RingClosure,
                        text: chars[start..start + 3].iter().collect(),
                        position: start,
                    });
                    i += 3;
                    continue;
                }
                return (tokens, Some(TokenizeError::MalformedPercentClosure(start)));
            }
            d if d.is_ascii_digit() => {
                tokens.push(Token {
                    kind: TokenKind::RingClosure,
                    text: d.to_string(),
                    position: start,
                });
                i += 1;
                continue;
            }
            '-' | '=' | '#' | ':' | '/' | '\\' => {
                // A bond symbol immediately followed by a closure number
                // belongs to the ring closure (e.g. "C=3c1ccccc1").
                let next = chars.get(i + 1).copied();
                if let Some(n) = next {
                    if n.is_ascii_digit() {
                        tokens.push(Token {
                            kind: TokenKind::RingClosure,
                            text: chars[start..start + 2].iter().collect(),
                            position: start,
                        });
                        i += 2;
                        continue;
                    }
                    if n == '%' {
                        if i + 3 < chars.len()
                            && chars[i + 2].is_ascii_digit()
                            && chars[i + 3].is_ascii_digit()
                        {
                            tokens.push(Token {
                                kind: TokenKind::RingClosure,
                                text: chars[start..start + 4].iter().collect(),
                                position: start,
                            });
                            i += 4;
                            continue;
                        }
                        return (tokens, Some(TokenizeError::MalformedPercentClosure(start + 1)));
                    }
                }
                TokenKind::Bond
            }
            '(' => TokenKind::OpenParen,
            ')' => TokenKind::CloseParen,
            '.' => TokenKind::Dot,
            '&' if dialect.has_separators() => TokenKind::AmpSep,
            '^' if dialect.has_separators() => TokenKind::CaretSep,
            _ => {
                if let Some(len) = scan_bare_atom(&chars, i) {
                    tokens.push(Token {
                        kind: TokenKind::Atom,
                        text: chars[start..start + len].iter().collect(),
                        position: start,
                    });
                    i += len;
                    continue;
                }
                return (tokens, Some(TokenizeError::UnknownCharacter(start)));
            }
        };
        tokens.push(Token {
            kind,
            text: c.to_string(),
            position: start,
        });
        i += 1;
    }
    (tokens, None)
}

pub fn tokenize(s: &str, dialect: Dialect) -> Result<Vec<Token>, TokenizeError> {
    match tokenize_prefix(s, dialect) {
        (tokens, None) => Ok(tokens),
        (_, Some(e)) => Err(e),
    }
}

/// Length in chars of a bare (unbracketed) atom symbol at `i`, if any.
fn scan_bare_atom(chars: &[char], i: usize) -> Option<usize> {
    match chars[i] {
        'C' => {
            if chars.get(i + 1) == Some(&'l') {
                Some(2)
            } else {
                Some(1)
            }
        }
        'B' => {
            if chars.get(i + 1) == Some(&'r') {
                Some(2)
            } else {
                Some(1)
            }
        }
        'N' | 'O' | 'P' | 'S' | 'F' | 'I' => Some(1),
        'b' | 'c' | 'n' | 'o' | 'p' | 's' => Some(1),
        '*' => Some(1),
        _ => None,
    }
}

/// Scan a bracket atom starting at `start` (which holds '['); returns the
/// index of the closing ']' after validating the contents.
fn scan_bracket(chars: &[char], start: usize) -> Result<usize, TokenizeError> {
    let mut end = start + 1;
    while end < chars.len() && chars[end] != ']' {
        end += 1;
    }
    if end >= chars.len() {
        return Err(TokenizeError::MalformedBracketAtom(start));
    }
    let text: String = chars[start..=end].iter().collect();
    parse_bracket_fields(&text, start)?;
    Ok(end)
}

/// Parse and validate the contents of a bracket atom token.
/// Grammar: `[` isotope? symbol chirality? hcount? charge? `]`.
pub(crate) fn parse_bracket_fields(text: &str, position: usize) -> Result<BracketFields, TokenizeError> {
    let err = || TokenizeError::MalformedBracketAtom(position);
    let inner: Vec<char> = text.chars().collect();
    if inner.len() < 3 || inner[0] != '[' || inner[inner.len() - 1] != ']' {
        return Err(err());
    }
    let body = &inner[1..inner.len() - 1];
    let mut i = 0;

    let mut isotope = None;
    let iso_start = i;
    while i < body.len() && body[i].is_ascii_digit() {
        i += 1;
    }
    if i > iso_start {
        if i - iso_start > 4 {
            return Err(err());
        }
        let digits: String = body[iso_start..i].iter().collect();
        isotope = Some(digits.parse::<u32>().map_err(|_| err())?);
    }

    let (element, aromatic) = match body.get(i) {
        Some('*') => {
            i += 1;
            // Attachment IDs are >= 1; `[0*]` is rejected outright.
            if isotope == Some(0) {
                return Err(err());
            }
            (Element::Star, false)
        }
        Some(&c) if c.is_ascii_uppercase() => {
            let two = (body.len() - i >= 2)
                .then(|| body[i..i + 2].iter().collect::<String>())
                .and_then(|t| Element::from_symbol(&t));
            if let Some(e) = two {
                i += 2;
                (e, false)
            } else if let Some(e) = Element::from_symbol(&c.to_string()) {
                i += 1;
                (e, false)
            } else {
                return Err(err());
            }
        }
        Some(&c) if matches!(c, 'b' | 'c' | 'n' | 'o' | 'p' | 's') => {
            i += 1;
            (Element::from_symbol(&c.to_ascii_uppercase().to_string()).unwrap(), true)
        }
        _ => return Err(err()),
    };

    let mut chirality = None;
    if body.get(i) == Some(&'@') {
        if body.get(i + 1) == Some(&'@') {
            chirality = Some(Chirality::Clockwise);
            i += 2;
        } else {
            chirality = Some(Chirality::Anticlockwise);
            i += 1;
        }
    }

    let mut explicit_h = 0u8;
    if body.get(i) == Some(&'H') {
        i += 1;
        let h_start = i;
        while i < body.len() && body[i].is_ascii_digit() {
            i += 1;
        }
        if i > h_start {
            let digits: String = body[h_start..i].iter().collect();
            explicit_h = digits.parse::<u8>().map_err(|_| err())?;
        } else {
            explicit_h = 1;
        }
    }

    let mut charge = 0i8;
    match body.get(i) {
        Some(&sign @ ('+' | '-')) => {
            i += 1;
            let unit: i8 = if sign == '+' { 1 } else { -1 };
            let d_start = i;
            while i < body.len() && body[i].is_ascii_digit() {
                i += 1;
            }
            if i > d_start {
                let digits: String = body[d_start..i].iter().collect();
                let n: i8 = digits.parse().map_err(|_| err())?;
                charge = unit * n;
            } else {
                charge = unit;
                while body.get(i) == Some(&sign) {
                    charge += unit;
                    i += 1;
                }
            }
        }
        _ => {}
    }

    if i != body.len() {
        return Err(err());
    }
    Ok(BracketFields {
        isotope,
        element,
        aromatic,
        chirality,
        explicit_h,
        charge,
    })
}

/// Split a ring-closure token text into its optional bond symbol and number.
pub(crate) fn closure_parts(text: &str) -> (Option<char>, u16) {
    let (bond, rest) = match text.chars().next() {
        Some(c @ ('-' | '=' | '#' | ':' | '/' | '\\')) => (Some(c), &text[1..]),
        _ => (None, text),
    };
    let number = if let Some(stripped) = rest.strip_prefix('%') {
        stripped.parse::<u16>().unwrap()
    } else {
        rest.parse::<u16>().unwrap()
    };
    (bond, number)
}

/// Attachment ID of a `[n*]` bracket token text, if it is a dummy with an ID.
pub(crate) fn dummy_attach_id(text: &str) -> Option<u32> {
    let fields = parse_bracket_fields(text, 0).ok()?;
    if fields.element == Element::Star {
        fields.isotope
    } else {
        None
    }
}
