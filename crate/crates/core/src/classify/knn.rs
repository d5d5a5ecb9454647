use crate::error::{Error, Result};

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority label among the `k` nearest training rows (Euclidean).
///
/// Equal distances are ordered by training index. A tie in the vote goes
/// to the tied label whose nearest member ranks first.
pub fn knn_predict(train: &[Vec<f64>], labels: &[usize], query: &[f64], k: usize) -> Result<usize> {
    if train.is_empty() {
        return Err(Error::param("k-NN needs at least one training row"));
    }
    if k == 0 || k > train.len() {
        return Err(Error::param(format!("k = {k} outside 1..={}", train.len())));
    }
    let mut order: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, r)| (squared_distance(r, query), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let neighbors = &order[..k];
    // (label, votes) in order of each label's nearest member.
    let mut tally: Vec<(usize, usize)> = Vec::new();
    for &(_, i) in neighbors {
        match tally.iter_mut().find(|(l, _)| *l == labels[i]) {
            Some(entry) => entry.1 += 1,
            None => tally.push((labels[i], 1)),
        }
    }
    let best = tally.iter().map(|&(_, v)| v).max().unwrap();
    Ok(tally.iter().find(|&&(_, v)| v == best).unwrap().0)
}
