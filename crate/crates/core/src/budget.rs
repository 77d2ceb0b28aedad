use crate::error::{Error, Result};

/// Node budget for exhaustive searches. Node counts are deterministic, so a
/// budgeted run gives the same answer on every machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 200_000_000;

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(Self::DEFAULT_NODES)
    }
}

#[derive(Debug)]
pub(crate) struct NodeCounter {
    pub used: u64,
    limit: u64,
}

impl NodeCounter {
    pub fn new(budget: Budget) -> Self {
        NodeCounter {
            used: 0,
            limit: budget.max_nodes,
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Budget { budget: self.limit });
        }
        Ok(())
    }
}
