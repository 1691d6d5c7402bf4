use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Random partition of `0..n` into `k` folds whose sizes differ by at most one.
pub fn kfold_split(n: usize, k: usize, rng: &mut impl Rng) -> Result<Vec<Vec<usize>>> {
    if k == 0 || n < k {
        return Err(Error::domain(format!("cannot split {n} rows into {k} folds")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut folds = vec![Vec::with_capacity(n / k + 1); k];
    for (i, row) in idx.into_iter().enumerate() {
        folds[i % k].push(row);
    }
    folds.iter_mut().for_each(|f| f.sort_unstable());
    Ok(folds)
}

/// Like [`kfold_split`] but keeps rows sharing a group id in the same fold.
/// Groups are shuffled, then each goes to the currently smallest fold.
pub fn group_kfold_split(groups: &[&str], k: usize, rng: &mut impl Rng) -> Result<Vec<Vec<usize>>> {
    let mut ids: Vec<&str> = groups.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if k == 0 || ids.len() < k {
        return Err(Error::domain(format!("cannot split {} groups into {k} folds", ids.len())));
    }
    ids.shuffle(rng);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for id in ids {
        let members = groups.iter().enumerate().filter(|(_, g)| **g == id).map(|(i, _)| i);
        let target = (0..k).min_by_key(|&f| (folds[f].len(), f)).unwrap();
        folds[target].extend(members);
    }
    folds.iter_mut().for_each(|f| f.sort_unstable());
    Ok(folds)
}
