//! State shared by the commands of one invocation: the class cache, caps and diagnostics.

use std::cell::RefCell;
use std::fmt;

use kkg_core::classes::ClassPartition;
use kkg_core::{conjugacy_classes, enumerate_group, ElementTable, GroupDesc};

use crate::cache::{Cache, Lookup};
use crate::literal::ParseError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters; exit status 2.
    Usage(String),
    /// A computation could not be carried out; exit status 2 unless it signals an
    /// internal inconsistency, which counts as a failed check.
    Compute(kkg_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(kkg_core::Error::Inconsistent(_)) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<kkg_core::Error> for CliError {
    fn from(e: kkg_core::Error) -> Self {
        match e {
            kkg_core::Error::NotPrime(_) | kkg_core::Error::InvalidParameter(_) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Compute(e),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(format!("matrix literal {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug)]
pub struct Context {
    pub cache: Cache,
    pub enum_cap: u128,
    pub seed: u64,
    warnings: RefCell<Vec<String>>,
}

impl Context {
    pub fn new(cache: Cache, enum_cap: u128, seed: u64) -> Self {
        Context {
            cache,
            enum_cap,
            seed,
            warnings: RefCell::new(Vec::new()),
        }
    }

    pub fn warn(&self, msg: impl Into<String>) {
        self.warnings.borrow_mut().push(msg.into());
    }

    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut self.warnings.borrow_mut())
    }

    /// Element table and class partition, from the cache when a valid entry exists.
    pub fn classes(&self, group: &GroupDesc) -> CliResult<(ElementTable, ClassPartition)> {
        match self.cache.load(group) {
            Lookup::Hit(table, part) => return Ok((table, part)),
            Lookup::Miss(Some(reason)) => self.warn(format!("ignoring cache entry: {reason}")),
            Lookup::Miss(None) => {}
        }
        let table = enumerate_group(group, self.enum_cap)?;
        let part = conjugacy_classes(&table);
        if let Err(e) = self.cache.store(&table, &part) {
            self.warn(format!(
                "could not write cache entry for {}: {e}",
                group.label()
            ));
        }
        Ok((table, part))
    }
}
