/// Resource caps shared by the engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe any engine will build or analyse.
    pub max_size: usize,
    /// Largest universe for which ideals are found by scanning every subset.
    pub ideal_threshold: usize,
    /// Upper bound on `|Ce(A)| * |Ce(B)|` explored by the Cantor–Bernstein search.
    pub cb_pair_cap: usize,
}

pub const DEFAULT_MAX_SIZE: usize = 64;
pub const DEFAULT_IDEAL_THRESHOLD: usize = 14;
pub const DEFAULT_CB_PAIR_CAP: usize = 4096;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_size: DEFAULT_MAX_SIZE,
            ideal_threshold: DEFAULT_IDEAL_THRESHOLD,
            cb_pair_cap: DEFAULT_CB_PAIR_CAP,
        }
    }
}

impl Limits {
    pub fn guard(&self, size: usize) -> crate::Result<()> {
        if size > self.max_size {
            return Err(crate::Error::TooLarge {
                size,
                max: self.max_size,
            });
        }
        Ok(())
    }
}
