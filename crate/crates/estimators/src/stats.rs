/// Median of `num_batches` means of `batch_size` draws from `trial_source`.
/// The first source failure aborts the whole computation.
///
/// Requires `batch_size >= 1` and an odd `num_batches`, so the median is a
/// single batch mean rather than an average of two.
pub fn median_of_means<E>(
    mut trial_source: impl FnMut() -> Result<f64, E>,
    batch_size: usize,
    num_batches: usize,
) -> Result<f64, E> {
    assert!(batch_size >= 1, "batches must contain at least one trial");
    assert!(
        num_batches % 2 == 1,
        "the batch count must be odd, got {num_batches}"
    );
    let mut means = Vec::with_capacity(num_batches);
    for _ in 0..num_batches {
        let mut sum = 0.0;
        for _ in 0..batch_size {
            sum += trial_source()?;
        }
        means.push(sum / batch_size as f64);
    }
    Ok(median(means))
}

/// Median of a nonempty sample; even lengths average the two central values.
pub(crate) fn median(mut values: Vec<f64>) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    values.sort_by(|a, b| a.partial_cmp(b).expect("estimates are finite"));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Smallest odd integer at or above `x`, never below 1.
pub(crate) fn odd_at_least(x: f64) -> usize {
    let c = x.ceil().max(1.0) as usize;
    if c % 2 == 0 {
        c + 1
    } else {
        c
    }
}

/// Batch count for mean-then-median boosting at failure probability `delta`.
pub(crate) fn batch_count(delta: f64) -> usize {
    odd_at_least(12.0 * (2.0 / delta).ln())
}

/// Copy count for plain median boosting of a constant-success estimator.
pub(crate) fn copy_count(delta: f64) -> usize {
    odd_at_least(18.0 * (2.0 / delta).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_source_returns_the_constant() {
        let v = median_of_means::<()>(|| Ok(2.5), 7, 5).unwrap();
        assert_eq!(v, 2.5);
    }

    #[test]
    fn batch_means_one_five_nine_give_five() {
        let mut vals = [1.0, 5.0, 9.0].into_iter();
        let v = median_of_means::<()>(|| Ok(vals.next().unwrap()), 1, 3).unwrap();
        assert_eq!(v, 5.0);
    }

    #[test]
    fn source_failure_propagates() {
        let mut left = 4;
        let r = median_of_means(
            || {
                left -= 1;
                if left == 0 {
                    Err("dry")
                } else {
                    Ok(1.0)
                }
            },
            2,
            3,
        );
        assert_eq!(r, Err("dry"));
    }

    #[test]
    #[should_panic(expected = "odd")]
    fn even_batch_count_is_rejected() {
        let _ = median_of_means::<()>(|| Ok(0.0), 1, 4);
    }

    #[test]
    fn odd_rounding() {
        assert_eq!(odd_at_least(0.2), 1);
        assert_eq!(odd_at_least(4.0), 5);
        assert_eq!(odd_at_least(4.2), 5);
        assert_eq!(odd_at_least(5.0), 5);
    }

    #[test]
    fn boost_counts_grow_as_delta_shrinks() {
        assert!(batch_count(0.01) > batch_count(0.2));
        assert_eq!(batch_count(0.2) % 2, 1);
        assert_eq!(copy_count(0.05) % 2, 1);
    }

    #[test]
    fn median_handles_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
