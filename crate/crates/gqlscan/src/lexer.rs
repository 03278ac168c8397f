//! Tokenizer for GraphQL source text (June 2018 edition).
//!
//! Commas, whitespace, line terminators, comments, and a leading BOM are
//! discarded. Every token carries the 1-based line/column where it starts.

use crate::ast::Location;
use crate::parser::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Name(String),
    Int(String),
    Float(String),
    /// `block` distinguishes `"""..."""` from `"..."`; the value is already
    /// unescaped and, for block strings, dedented.
    Str {
        value: String,
        block: bool,
    },
    Bang,
    Dollar,
    ParenOpen,
    ParenClose,
    Spread,
    Colon,
    Equals,
    At,
    BracketOpen,
    BracketClose,
    BraceOpen,
    BraceClose,
    Pipe,
    Amp,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Name(n) => format!("name `{n}`"),
            TokenKind::Int(v) => format!("integer `{v}`"),
            TokenKind::Float(v) => format!("float `{v}`"),
            TokenKind::Str { .. } => "string".to_string(),
            TokenKind::Bang => "`!`".to_string(),
            TokenKind::Dollar => "`$`".to_string(),
            TokenKind::ParenOpen => "`(`".to_string(),
            TokenKind::ParenClose => "`)`".to_string(),
            TokenKind::Spread => "`...`".to_string(),
            TokenKind::Colon => "`:`".to_string(),
            TokenKind::Equals => "`=`".to_string(),
            TokenKind::At => "`@`".to_string(),
            TokenKind::BracketOpen => "`[`".to_string(),
            TokenKind::BracketClose => "`]`".to_string(),
            TokenKind::BraceOpen => "`{`".to_string(),
            TokenKind::BraceClose => "`}`".to_string(),
            TokenKind::Pipe => "`|`".to_string(),
            TokenKind::Amp => "`&`".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub loc: Location,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    Lexer::new(source).run()
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
}

impl Lexer {
    fn new(source: &str) -> Self {
        Lexer {
            chars: source.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn loc(&self) -> Location {
        Location::new(self.line, self.column)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        match c {
            '\n' => {
                self.line += 1;
                self.column = 1;
            }
            '\r' => {
                // \r\n counts as a single line terminator.
                if self.peek() == Some('\n') {
                    self.pos += 1;
                }
                self.line += 1;
                self.column = 1;
            }
            _ => self.column += 1,
        }
        Some(c)
    }

    fn error(&self, loc: Location, message: impl Into<String>) -> ParseError {
        ParseError::syntax(message, loc)
    }

    fn run(mut self) -> Result<Vec<Token>, ParseError> {
        let mut tokens = Vec::new();
        loop {
            self.skip_ignored();
            let loc = self.loc();
            let Some(c) = self.peek() else {
                tokens.push(Token {
                    kind: TokenKind::Eof,
                    loc,
                });
                return Ok(tokens);
            };
            let kind = match c {
                '!' => self.punct(TokenKind::Bang),
                '$' => self.punct(TokenKind::Dollar),
                '(' => self.punct(TokenKind::ParenOpen),
                ')' => self.punct(TokenKind::ParenClose),
                ':' => self.punct(TokenKind::Colon),
                '=' => self.punct(TokenKind::Equals),
                '@' => self.punct(TokenKind::At),
                '[' => self.punct(TokenKind::BracketOpen),
                ']' => self.punct(TokenKind::BracketClose),
                '{' => self.punct(TokenKind::BraceOpen),
                '}' => self.punct(TokenKind::BraceClose),
                '|' => self.punct(TokenKind::Pipe),
                '&' => self.punct(TokenKind::Amp),
                '.' => {
                    if self.peek_at(1) == Some('.') && self.peek_at(2) == Some('.') {
                        self.bump();
                        self.bump();
                        self.bump();
                        TokenKind::Spread
                    } else {
                        return Err(self.error(loc, "unexpected `.` (expected `...`)"));
                    }
                }
                '"' => self.string(loc)?,
                c if c == '_' || c.is_ascii_alphabetic() => self.name(),
                c if c == '-' || c.is_ascii_digit() => self.number(loc)?,
                other => {
                    return Err(self.error(loc, format!("unexpected character `{other}`")));
                }
            };
            tokens.push(Token { kind, loc });
        }
    }

    fn skip_ignored(&mut self) {
        loop {
            match self.peek() {
                Some(' ') | Some('\t') | Some(',') | Some('\n') | Some('\r') | Some('\u{feff}') => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' || c == '\r' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn punct(&mut self, kind: TokenKind) -> TokenKind {
        self.bump();
        kind
    }

    fn name(&mut self) -> TokenKind {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c == '_' || c.is_ascii_alphanumeric() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        TokenKind::Name(s)
    }

    fn number(&mut self, loc: Location) -> Result<TokenKind, ParseError> {
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        let int_start = s.len();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let int_part = &s[int_start..];
        if int_part.is_empty() {
            return Err(self.error(loc, "expected digits after `-`"));
        }
        if int_part.len() > 1 && int_part.starts_with('0') {
            return Err(self.error(loc, format!("invalid number `{s}`: leading zero")));
        }

        let mut is_float = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            is_float = true;
            s.push('.');
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            is_float = true;
            s.push(self.bump().unwrap());
            if matches!(self.peek(), Some('+') | Some('-')) {
                s.push(self.bump().unwrap());
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    self.bump();
                    exp_digits += 1;
                } else {
                    break;
                }
            }
            if exp_digits == 0 {
                return Err(self.error(loc, format!("invalid number `{s}`: empty exponent")));
            }
        }
        // A number followed directly by a name or `.` is malformed (`1x`,
        // `1.2.3`).
        if let Some(c) = self.peek() {
            if c == '_' || c.is_ascii_alphabetic() || c == '.' {
                return Err(self.error(
                    loc,
                    format!("invalid number `{s}`: unexpected trailing `{c}`"),
                ));
            }
        }
        Ok(if is_float {
            TokenKind::Float(s)
        } else {
            TokenKind::Int(s)
        })
    }

    fn string(&mut self, loc: Location) -> Result<TokenKind, ParseError> {
        if self.peek_at(1) == Some('"') && self.peek_at(2) == Some('"') {
            return self.block_string(loc);
        }
        self.bump();
        let mut value = String::new();
        loop {
            let Some(c) = self.peek() else {
                return Err(self.error(loc, "unterminated string"));
            };
            match c {
                '"' => {
                    self.bump();
                    return Ok(TokenKind::Str {
                        value,
                        block: false,
                    });
                }
                '\n' | '\r' => return Err(self.error(loc, "unterminated string")),
                '\\' => {
                    self.bump();
                    let Some(esc) = self.bump() else {
                        return Err(self.error(loc, "unterminated string"));
                    };
                    match esc {
                        '"' => value.push('"'),
                        '\\' => value.push('\\'),
                        '/' => value.push('/'),
                        'b' => value.push('\u{0008}'),
                        'f' => value.push('\u{000C}'),
                        'n' => value.push('\n'),
                        'r' => value.push('\r'),
                        't' => value.push('\t'),
                        'u' => {
                            let mut code = 0u32;
                            for _ in 0..4 {
                                let Some(h) = self.bump().and_then(|c| c.to_digit(16)) else {
                                    return Err(self.error(
                                        loc,
                                        "invalid unicode escape (expected 4 hex digits)",
                                    ));
                                };
                                code = code * 16 + h;
                            }
                            match char::from_u32(code) {
                                Some(c) => value.push(c),
                                None => {
                                    return Err(
                                        self.error(loc, "invalid unicode escape code point")
                                    )
                                }
                            }
                        }
                        other => {
                            return Err(
                                self.error(loc, format!("invalid escape sequence `\\{other}`"))
                            )
                        }
                    }
                }
                _ => {
                    value.push(c);
                    self.bump();
                }
            }
        }
    }

    fn block_string(&mut self, loc: Location) -> Result<TokenKind, ParseError> {
        self.bump();
        self.bump();
        self.bump();
        let mut raw = String::new();
        loop {
            let Some(c) = self.peek() else {
                return Err(self.error(loc, "unterminated block string"));
            };
            if c == '"' && self.peek_at(1) == Some('"') && self.peek_at(2) == Some('"') {
                self.bump();
                self.bump();
                self.bump();
                return Ok(TokenKind::Str {
                    value: dedent_block_string(&raw),
                    block: true,
                });
            }
            if c == '\\'
                && self.peek_at(1) == Some('"')
                && self.peek_at(2) == Some('"')
                && self.peek_at(3) == Some('"')
            {
                self.bump();
                self.bump();
                self.bump();
                self.bump();
                raw.push_str("\"\"\"");
                continue;
            }
            raw.push(c);
            self.bump();
        }
    }
}

/// Block string value semantics: strip the common indentation of every line
/// after the first, then drop leading and trailing blank lines.
fn dedent_block_string(raw: &str) -> String {
    let normalized = raw.replace("\r\n", "\n").replace('\r', "\n");
    let lines: Vec<&str> = normalized.split('\n').collect();

    let mut common_indent: Option<usize> = None;
    for line in lines.iter().skip(1) {
        let indent = line.chars().take_while(|c| *c == ' ' || *c == '\t').count();
        let is_blank = line.chars().all(|c| c == ' ' || c == '\t');
        if !is_blank {
            common_indent = Some(match common_indent {
                Some(ci) => ci.min(indent),
                None => indent,
            });
        }
    }

    let mut out: Vec<String> = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if i == 0 {
            out.push((*line).to_string());
        } else {
            let strip = common_indent.unwrap_or(0);
            let stripped: String = {
                let mut removed = 0;
                line.chars()
                    .skip_while(|c| {
                        if removed < strip && (*c == ' ' || *c == '\t') {
                            removed += 1;
                            true
                        } else {
                            false
                        }
                    })
                    .collect()
            };
            out.push(stripped);
        }
    }

    while out
        .first()
        .is_some_and(|l| l.chars().all(|c| c == ' ' || c == '\t'))
    {
        out.remove(0);
    }
    while out
        .last()
        .is_some_and(|l| l.chars().all(|c| c == ' ' || c == '\t'))
    {
        out.pop();
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(source: &str) -> Vec<TokenKind> {
        tokenize(source).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn punctuators_and_names() {
        let ks = kinds("type Query { a: [Int!]! }");
        assert_eq!(
            ks,
            vec![
                TokenKind::Name("type".into()),
                TokenKind::Name("Query".into()),
                TokenKind::BraceOpen,
                TokenKind::Name("a".into()),
                TokenKind::Colon,
                TokenKind::BracketOpen,
                TokenKind::Name("Int".into()),
                TokenKind::Bang,
                TokenKind::BracketClose,
                TokenKind::Bang,
                TokenKind::BraceClose,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn commas_and_comments_are_ignored() {
        let ks = kinds("a, b # trailing comment\nc");
        assert_eq!(
            ks,
            vec![
                TokenKind::Name("a".into()),
                TokenKind::Name("b".into()),
                TokenKind::Name("c".into()),
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn numbers() {
        assert_eq!(
            kinds("0 -5 1.5 2e3 -1.5e-2"),
            vec![
                TokenKind::Int("0".into()),
                TokenKind::Int("-5".into()),
                TokenKind::Float("1.5".into()),
                TokenKind::Float("2e3".into()),
                TokenKind::Float("-1.5e-2".into()),
                TokenKind::Eof,
            ]
        );
        assert!(tokenize("01").is_err());
        assert!(tokenize("1x").is_err());
    }

    #[test]
    fn string_escapes() {
        assert_eq!(
            kinds(r#""a\n\"bA""#),
            vec![
                TokenKind::Str {
                    value: "a\n\"bA".into(),
                    block: false
                },
                TokenKind::Eof,
            ]
        );
        assert!(tokenize("\"unterminated").is_err());
    }

    #[test]
    fn block_string_dedents() {
        let src = "\"\"\"\n    Hello,\n      World!\n\n    Yours,\n      GraphQL.\n\"\"\"";
        assert_eq!(
            kinds(src),
            vec![
                TokenKind::Str {
                    value: "Hello,\n  World!\n\nYours,\n  GraphQL.".into(),
                    block: true
                },
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn locations_are_one_based() {
        let tokens = tokenize("type\n  Query").unwrap();
        assert_eq!(tokens[0].loc, Location::new(1, 1));
        assert_eq!(tokens[1].loc, Location::new(2, 3));
    }
}
