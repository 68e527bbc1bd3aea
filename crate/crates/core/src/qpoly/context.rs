use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered variable names with per-variable Laurent flags.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    laurent: Vec<bool>,
}

/// Shared handle to a variable table; polynomials carry one of these.
pub type Ctx = Arc<VarTable>;

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let laurent = vec![false; names.len()];
        Self::with_flags(names, &laurent)
    }

    pub fn with_flags<S: AsRef<str>>(names: &[S], laurent: &[bool]) -> Result<Self> {
        if names.len() != laurent.len() {
            return Err(Error::Input(format!(
                "{} variable names but {} Laurent flags",
                names.len(),
                laurent.len()
            )));
        }
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            let mut chars = n.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Input(format!("invalid variable name `{n}`")));
            }
            if out.iter().any(|m: &String| m == n) {
                return Err(Error::Input(format!("duplicate variable name `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(VarTable { names: out, laurent: laurent.to_vec() })
    }

    pub fn ctx<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
        Ok(Arc::new(Self::new(names)?))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn laurent_flags(&self) -> &[bool] {
        &self.laurent
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The first `k` variables.
    pub fn prefix(&self, k: usize) -> VarTable {
        VarTable { names: self.names[..k].to_vec(), laurent: self.laurent[..k].to_vec() }
    }

    /// Same names, with variable `i` marked Laurent.
    pub fn with_laurent(&self, i: usize) -> VarTable {
        let mut t = self.clone();
        t.laurent[i] = true;
        t
    }

    /// Same names with every Laurent flag cleared.
    pub fn polynomial_part(&self) -> VarTable {
        VarTable { names: self.names.clone(), laurent: vec![false; self.names.len()] }
    }

    /// Appends fresh polynomial variables; names are made unique with a
    /// leading underscore and a counter if they collide.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> VarTable {
        let mut t = self.clone();
        for e in extra {
            let mut name = e.as_ref().to_string();
            let mut n = 0;
            while t.names.contains(&name) {
                n += 1;
                name = format!("{}_{n}", e.as_ref());
            }
            t.names.push(name);
            t.laurent.push(false);
        }
        t
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarTable[")?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}{}", if self.laurent[i] { "^±" } else { "" })?;
        }
        write!(f, "]")
    }
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
