//! Tokenizer for `.phase` documents.
//!
//! The grammar is line oriented: a newline ends a statement unless the line
//! ends with a `\` continuation. Comments run from `#` to end of line.
//! Malformed input never aborts lexing; it produces [`TokenKind::Error`]
//! tokens that the parser reports and skips.

use crate::model::is_ident_continue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// Identifier-shaped word: keywords, ids and enum values.
    Word(String),
    /// Double-quoted string with escapes already resolved.
    Str(String),
    Eq,
    LBracket,
    RBracket,
    Comma,
    /// End of a logical statement.
    Newline,
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: u32,
    pub column: u32,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

pub fn tokenize(text: &str) -> Vec<Token> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let push = |out: &mut Vec<Token>, kind| out.push(Token { kind, line, column });
        match c {
            ' ' | '\t' | '\r' => {
                cur.bump();
            }
            '\n' => {
                cur.bump();
                push(&mut out, TokenKind::Newline);
            }
            '#' => {
                while matches!(cur.peek(), Some(c) if c != '\n') {
                    cur.bump();
                }
            }
            '\\' => {
                cur.bump();
                while matches!(cur.peek(), Some(' ' | '\t' | '\r')) {
                    cur.bump();
                }
                match cur.peek() {
                    Some('\n') => {
                        cur.bump();
                    }
                    None => {}
                    Some(_) => push(
                        &mut out,
                        TokenKind::Error("`\\` is only allowed as a line continuation".into()),
                    ),
                }
            }
            '=' => {
                cur.bump();
                push(&mut out, TokenKind::Eq);
            }
            '[' => {
                cur.bump();
                push(&mut out, TokenKind::LBracket);
            }
            ']' => {
                cur.bump();
                push(&mut out, TokenKind::RBracket);
            }
            ',' => {
                cur.bump();
                push(&mut out, TokenKind::Comma);
            }
            '"' => {
                cur.bump();
                let kind = lex_string(&mut cur);
                push(&mut out, kind);
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(c) = cur.peek().filter(|c| is_ident_continue(*c)) {
                    word.push(c);
                    cur.bump();
                }
                push(&mut out, TokenKind::Word(word));
            }
            c if c.is_ascii_digit() || c == '_' || c == '-' => {
                let mut word = String::new();
                while let Some(c) = cur.peek().filter(|c| is_ident_continue(*c)) {
                    word.push(c);
                    cur.bump();
                }
                push(
                    &mut out,
                    TokenKind::Error(format!("`{word}` is not an identifier: identifiers start with a letter")),
                );
            }
            other => {
                cur.bump();
                push(&mut out, TokenKind::Error(format!("unexpected character {other:?}")));
            }
        }
    }
    out
}

/// Lexes the body of a string; the opening quote is already consumed.
fn lex_string(cur: &mut Cursor<'_>) -> TokenKind {
    let mut value = String::new();
    let mut bad_escape = None;
    loop {
        match cur.peek() {
            None | Some('\n') => return TokenKind::Error("unterminated string".into()),
            Some('"') => {
                cur.bump();
                return match bad_escape {
                    Some(c) => TokenKind::Error(format!("invalid escape `\\{c}` in string; only `\\\"` and `\\\\` are allowed")),
                    None => TokenKind::Str(value),
                };
            }
            Some('\\') => {
                cur.bump();
                match cur.peek() {
                    Some(c @ ('"' | '\\')) => {
                        cur.bump();
                        value.push(c);
                    }
                    None | Some('\n') => return TokenKind::Error("unterminated string".into()),
                    Some(c) => {
                        cur.bump();
                        bad_escape.get_or_insert(c);
                    }
                }
            }
            Some(c) => {
                cur.bump();
                value.push(c);
            }
        }
    }
}
