use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A named indeterminate.
///
/// Symbols order by their ordinal, which is assigned once by the
/// [`SymbolTable`] that created them. The name only breaks ties between
/// symbols coming from different tables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    ordinal: u32,
    name: Arc<str>,
}

impl Symbol {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ordinal(&self) -> u32 {
        self.ordinal
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The shared context that hands out [`Symbol`]s with unique names and
/// stable ordinals.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    symbols: Vec<Symbol>,
    by_name: HashMap<Arc<str>, usize>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Creates a table holding `names` in order; repeated names are interned once.
    pub fn with_names<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Self {
        let mut table = Self::new();
        for name in names {
            table.intern(name);
        }
        table
    }

    /// Returns the symbol called `name`, creating it with the next ordinal if needed.
    pub fn intern(&mut self, name: &str) -> Symbol {
        if let Some(&idx) = self.by_name.get(name) {
            return self.symbols[idx].clone();
        }
        let name: Arc<str> = Arc::from(name);
        let symbol = Symbol {
            ordinal: self.symbols.len() as u32,
            name: name.clone(),
        };
        self.by_name.insert(name, self.symbols.len());
        self.symbols.push(symbol.clone());
        symbol
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.by_name.get(name).map(|&idx| self.symbols[idx].clone())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}
