/// Resource ceilings for the exponential parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count accepted by flag vector computations.
    pub max_vertices: usize,
    /// Largest vertex count for shelling vectors, whose size grows much faster.
    pub max_shelling_vertices: usize,
    /// Largest number of labeled candidates an enumeration may visit.
    pub max_labeled: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 12,
            max_shelling_vertices: 7,
            max_labeled: 1 << 16,
        }
    }
}

impl Limits {
    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }

    pub fn check_vertices(&self, n: usize) -> crate::Result<()> {
        if n > self.max_vertices {
            return Err(crate::Error::TooLarge {
                what: "vertex count",
                size: n as u64,
                limit: self.max_vertices as u64,
            });
        }
        Ok(())
    }
}
