//! Source text to forms.
//!
//! The surface syntax is a small s-expression subset: symbols, keywords,
//! 64-bit integers, double-quoted strings, `'x`, `#'x`, proper lists and `;`
//! comments. Symbols are case-insensitive and stored upper-cased.

use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::value::{Symbol, Value};

/// 1-based line and column of a lexeme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl Position {
    pub const fn new(line: u32, column: u32) -> Self {
        Position { line, column }
    }
}

impl Default for Position {
    fn default() -> Self {
        Position::new(1, 1)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    OpenParen,
    CloseParen,
    QuoteMark,
    SharpQuote,
    Symbol(Symbol),
    Keyword(Symbol),
    Integer(i64),
    Str(String),
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// The lexeme exactly as it appeared in the source.
    pub text: String,
    pub position: Position,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '\'' | '"' | ';')
}

fn is_illegal(c: char) -> bool {
    matches!(c, '`' | ',' | '|' | '\\') || (c.is_control() && !c.is_whitespace())
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn position(&self) -> Position {
        Position::new(self.line, self.column)
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

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Token> {
        self.skip_trivia();
        let position = self.position();
        let Some(c) = self.bump() else {
            return Ok(Token {
                kind: TokenKind::Eof,
                text: String::new(),
                position,
            });
        };
        let simple = |kind: TokenKind, text: &str| Token {
            kind,
            text: text.to_string(),
            position,
        };
        match c {
            '(' => Ok(simple(TokenKind::OpenParen, "(")),
            ')' => Ok(simple(TokenKind::CloseParen, ")")),
            '\'' => Ok(simple(TokenKind::QuoteMark, "'")),
            '#' => match self.chars.peek() {
                Some('\'') => {
                    self.bump();
                    Ok(simple(TokenKind::SharpQuote, "#'"))
                }
                _ => Err(Error::read("`#` is only supported as `#'`", position)),
            },
            '"' => self.string(position),
            c if is_illegal(c) => Err(Error::read(format!("illegal character {c:?}"), position)),
            c => self.atom(c, position),
        }
    }

    fn string(&mut self, position: Position) -> Result<Token> {
        let mut text = String::from("\"");
        let mut value = String::new();
        loop {
            let escape_pos = self.position();
            match self.bump() {
                None => return Err(Error::read("unterminated string", position)),
                Some('"') => {
                    text.push('"');
                    break;
                }
                Some('\\') => {
                    text.push('\\');
                    match self.bump() {
                        Some(c @ ('"' | '\\')) => {
                            text.push(c);
                            value.push(c);
                        }
                        Some(c) => return Err(Error::read(format!("unknown string escape `\\{c}`"), escape_pos)),
                        None => return Err(Error::read("unterminated string", position)),
                    }
                }
                Some(c) => {
                    text.push(c);
                    value.push(c);
                }
            }
        }
        Ok(Token {
            kind: TokenKind::Str(value),
            text,
            position,
        })
    }

    fn atom(&mut self, first: char, position: Position) -> Result<Token> {
        let mut text = String::from(first);
        while let Some(&c) = self.chars.peek() {
            if is_delimiter(c) {
                break;
            }
            if is_illegal(c) || c == '#' {
                return Err(Error::read(format!("illegal character {c:?}"), self.position()));
            }
            text.push(c);
            self.bump();
        }
        let kind = if looks_like_integer(&text) {
            let n = text.parse::<i64>().map_err(|_| {
                Error::read(
                    format!("integer literal {text} is outside the 64-bit signed range"),
                    position,
                )
            })?;
            TokenKind::Integer(n)
        } else if let Some(name) = text.strip_prefix(':') {
            if name.is_empty() || name.contains(':') {
                return Err(Error::read(format!("malformed keyword `{text}`"), position));
            }
            TokenKind::Keyword(Symbol::new(name))
        } else {
            TokenKind::Symbol(Symbol::new(&text))
        };
        Ok(Token { kind, text, position })
    }
}

fn looks_like_integer(text: &str) -> bool {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Splits `text` into tokens; the last token is always [`TokenKind::Eof`].
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let done = token.kind == TokenKind::Eof;
        tokens.push(token);
        if done {
            return Ok(tokens);
        }
    }
}

/// A parsed s-expression with the position of its first token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub datum: Datum,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Datum {
    Nil,
    T,
    Integer(i64),
    Str(Rc<str>),
    Symbol(Symbol),
    Keyword(Symbol),
    /// Always non-empty; `()` reads as [`Datum::Nil`].
    List(Rc<[Form]>),
}

impl Form {
    pub fn new(datum: Datum, position: Position) -> Self {
        Form { datum, position }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match &self.datum {
            Datum::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Form]> {
        match &self.datum {
            Datum::List(items) => Some(items),
            _ => None,
        }
    }

    /// The value this form denotes when quoted.
    pub fn to_value(&self) -> Value {
        match &self.datum {
            Datum::Nil => Value::Nil,
            Datum::T => Value::T,
            Datum::Integer(n) => Value::Integer(*n),
            Datum::Str(s) => Value::Str(s.clone()),
            Datum::Symbol(s) => Value::Symbol(s.clone()),
            Datum::Keyword(k) => Value::Keyword(k.clone()),
            Datum::List(items) => Value::list(items.iter().map(Form::to_value)),
        }
    }

    /// True when the head of this list form is the symbol `name`.
    pub fn is_call_to(&self, name: &str) -> bool {
        self.as_list()
            .and_then(|items| items.first())
            .and_then(Form::as_symbol)
            .is_some_and(|s| s.name() == name)
    }
}

fn wrap(name: &str, inner: Form, position: Position) -> Form {
    let head = Form::new(Datum::Symbol(Symbol::new(name)), position);
    Form::new(Datum::List(Rc::from(vec![head, inner])), position)
}

/// Builds forms from a token stream ending in [`TokenKind::Eof`].
pub fn parse(tokens: &[Token]) -> Result<Vec<Form>> {
    let mut cursor = 0;
    let mut forms = Vec::new();
    loop {
        let token = tokens
            .get(cursor)
            .ok_or_else(|| Error::read("token stream is missing its eof token", Position::default()))?;
        if token.kind == TokenKind::Eof {
            return Ok(forms);
        }
        forms.push(parse_form(tokens, &mut cursor)?);
    }
}

fn parse_form(tokens: &[Token], cursor: &mut usize) -> Result<Form> {
    let token = &tokens[*cursor];
    *cursor += 1;
    let position = token.position;
    let datum = match &token.kind {
        TokenKind::Integer(n) => Datum::Integer(*n),
        TokenKind::Str(s) => Datum::Str(Rc::from(s.as_str())),
        TokenKind::Keyword(k) => Datum::Keyword(k.clone()),
        TokenKind::Symbol(s) => match s.name() {
            "NIL" => Datum::Nil,
            "T" => Datum::T,
            _ => Datum::Symbol(s.clone()),
        },
        TokenKind::QuoteMark | TokenKind::SharpQuote => {
            let name = if token.kind == TokenKind::QuoteMark {
                "QUOTE"
            } else {
                "FUNCTION"
            };
            match tokens.get(*cursor).map(|t| &t.kind) {
                None | Some(TokenKind::Eof) | Some(TokenKind::CloseParen) => {
                    return Err(Error::read(
                        format!("`{}` must be followed by a form", token.text),
                        position,
                    ))
                }
                _ => {}
            }
            let inner = parse_form(tokens, cursor)?;
            return Ok(wrap(name, inner, position));
        }
        TokenKind::CloseParen => return Err(Error::read("unexpected `)`", position)),
        TokenKind::Eof => return Err(Error::read("unexpected end of input", position)),
        TokenKind::OpenParen => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*cursor).map(|t| &t.kind) {
                    None | Some(TokenKind::Eof) => return Err(Error::read("unbalanced `(`: missing `)`", position)),
                    Some(TokenKind::CloseParen) => {
                        *cursor += 1;
                        break;
                    }
                    _ => items.push(parse_form(tokens, cursor)?),
                }
            }
            if items.is_empty() {
                Datum::Nil
            } else {
                Datum::List(Rc::from(items))
            }
        }
    };
    Ok(Form::new(datum, position))
}

/// Tokenizes and parses in one step.
pub fn read_str(text: &str) -> Result<Vec<Form>> {
    parse(&tokenize(text)?)
}
