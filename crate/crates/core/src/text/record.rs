use std::fmt;

use crate::error::{Error, Result};

/// One line of structured output: a kind followed by `key=value` fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

fn bare(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !matches!(c, '"' | '\\' | '='))
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record { kind: kind.into(), fields: Vec::new() }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(line: &str) -> Result<Record> {
        let chars: Vec<char> = line.chars().collect();
        let mut pos = 0;
        let err = |pos: usize, msg: &str| Error::parse(1, pos + 1, msg);
        let skip = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let word = |pos: &mut usize| {
            let start = *pos;
            while *pos < chars.len() && !chars[*pos].is_whitespace() && !matches!(chars[*pos], '"' | '\\' | '=') {
                *pos += 1;
            }
            chars[start..*pos].iter().collect::<String>()
        };
        skip(&mut pos);
        let kind = word(&mut pos);
        if kind.is_empty() {
            return Err(err(pos, "expected a record kind"));
        }
        let mut rec = Record::new(kind);
        loop {
            let before = pos;
            skip(&mut pos);
            if pos == chars.len() {
                return Ok(rec);
            }
            if pos == before {
                return Err(err(pos, "expected whitespace"));
            }
            let key = word(&mut pos);
            if key.is_empty() || chars.get(pos) != Some(&'=') {
                return Err(err(pos, "expected key=value"));
            }
            pos += 1;
            let value = if chars.get(pos) == Some(&'"') {
                pos += 1;
                let mut v = String::new();
                loop {
                    match chars.get(pos) {
                        None => return Err(err(pos, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => {
                            pos += 1;
                            match chars.get(pos) {
                                Some('n') => v.push('\n'),
                                Some(&c @ ('"' | '\\')) => v.push(c),
                                _ => return Err(err(pos, "bad escape")),
                            }
                        }
                        Some(&c) => v.push(c),
                    }
                    pos += 1;
                }
                pos += 1;
                v
            } else {
                let v = word(&mut pos);
                if v.is_empty() {
                    return Err(err(pos, "empty bare value"));
                }
                v
            };
            rec.fields.push((key, value));
        }
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind)?;
        for (k, v) in &self.fields {
            if bare(v) {
                write!(f, " {k}={v}")?;
            } else {
                let esc = v.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n");
                write!(f, " {k}=\"{esc}\"")?;
            }
        }
        Ok(())
    }
}
