use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An interned alphabet letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijective interning of identifier names to [`Symbol`]s, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    ids: HashMap<String, Symbol>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.intern(name.into())?;
        }
        Ok(alphabet)
    }

    fn intern(&mut self, name: String) -> Result<Symbol> {
        // `1` is the unit monomial, so it can never be a letter.
        if !is_identifier(&name) {
            return Err(Error::InvalidSymbolName(name));
        }
        if self.ids.contains_key(&name) {
            return Err(Error::DuplicateSymbol(name));
        }
        let sym = Symbol(self.names.len() as u32);
        self.ids.insert(name.clone(), sym);
        self.names.push(name);
        Ok(sym)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.ids.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.symbol(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.index()]
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym.index() < self.names.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}
