//! Execution-mode switch: data-parallel evaluation over rayon when the
//! `parallel` feature is on, with a sequential fallback that preserves the
//! same result order either way. Sampling always happens before evaluation
//! so reports are byte-identical across modes.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl ExecMode {
    /// The mode actually used: parallel requests degrade to sequential when
    /// the crate is built without the `parallel` feature.
    pub fn effective(self) -> ExecMode {
        #[cfg(not(feature = "parallel"))]
        {
            return ExecMode::Sequential;
        }
        #[cfg(feature = "parallel")]
        {
            self
        }
    }
}

/// Order-preserving map over a slice, parallel or sequential per `mode`.
pub fn pmap<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            unreachable!("effective() degrades to sequential")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_preserve_order() {
        let xs: Vec<u64> = (0..200).collect();
        let seq = pmap(ExecMode::Sequential, &xs, |x| x * x + 1);
        let par = pmap(ExecMode::Parallel, &xs, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[3], 10);
    }
}
