use rayon::prelude::*;

use crate::error::Result;
use crate::limits::Limits;
use crate::model::{AtomId, Interpretation};

/// Every subset of `ids` accepted by `accept`, in canonical order.
///
/// Candidates are checked in parallel on the current rayon pool; the result
/// (and the error reported, if any) does not depend on the pool size.
pub(crate) fn sweep<F>(
    what: &'static str,
    ids: &[AtomId],
    limits: &Limits,
    accept: F,
) -> Result<Vec<Interpretation>>
where
    F: Fn(&Interpretation) -> Result<bool> + Sync,
{
    limits.check_sweep(what, ids.len())?;
    let hits: Vec<Result<Interpretation>> = (0..(1u64 << ids.len()))
        .into_par_iter()
        .filter_map(|m| {
            let s = Interpretation::from_mask(ids, m);
            match accept(&s) {
                Ok(true) => Some(Ok(s)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect();
    let mut out = hits.into_iter().collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}
