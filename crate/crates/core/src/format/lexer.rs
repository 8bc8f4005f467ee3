use super::ast::MarkerKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Nat(String),
    Punct(char),
    Arrow,
    Marker(MarkerKind),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(s) => format!("number `{s}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Arrow => "`->`".to_string(),
            Tok::Marker(_) => "fragment marker".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Position just past the token.
    pub end_line: usize,
    pub end_column: usize,
}

/// Splits proof text into tokens, tracking 1-based line and column.
pub(crate) struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

#[derive(Debug)]
pub(crate) struct LexError {
    pub line: usize,
    pub column: usize,
    pub found: char,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        let src = src.strip_prefix('\u{feff}').unwrap_or(src);
        Lexer { src, pos: 0, line: 1, column: 1 }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek_char() {
            if !pred(c) {
                break;
            }
            self.bump();
        }
        &self.src[start..self.pos]
    }

    pub(crate) fn next_token(&mut self) -> Result<Token, LexError> {
        loop {
            self.take_while(char::is_whitespace);
            if self.peek_char() != Some('#') {
                break;
            }
            let (line, column) = (self.line, self.column);
            self.bump();
            let text = self.take_while(|c| c != '\n').trim();
            let marker = match text {
                "frag-begin" => Some(MarkerKind::FragmentBegin),
                "frag-end" => Some(MarkerKind::FragmentEnd),
                _ => None,
            };
            if let Some(kind) = marker {
                return Ok(Token {
                    tok: Tok::Marker(kind),
                    line,
                    column,
                    end_line: self.line,
                    end_column: self.column,
                });
            }
        }
        let (line, column) = (self.line, self.column);
        let tok = match self.peek_char() {
            None => Tok::Eof,
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                Tok::Ident(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                if self.peek_char().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                    // identifiers may not start with a digit
                    return Err(LexError { line: self.line, column: self.column, found: self.peek_char().unwrap() });
                }
                Tok::Nat(digits.to_string())
            }
            Some('-') => {
                self.bump();
                if self.peek_char() == Some('>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    Tok::Punct('-')
                }
            }
            Some(c) if ",;()*+/^:[]{}".contains(c) => {
                self.bump();
                Tok::Punct(c)
            }
            Some(c) => return Err(LexError { line, column, found: c }),
        };
        Ok(Token { tok, line, column, end_line: self.line, end_column: self.column })
    }
}
