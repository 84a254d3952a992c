//! Bit-length helpers shared by the simulator and the label encodings.

/// `ceil(log2(n))`, but at least 1 so that even a one-node id costs a bit.
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 2 {
        return 1;
    }
    u64::from(64 - (n - 1).leading_zeros())
}

/// Bits for a node id in an `n`-node graph.
pub fn id_bits(n: usize) -> u64 {
    ceil_log2(n as u64)
}

/// Bits for a distance of a simple path, which is at most `n * W`.
pub fn dist_bits(n: usize, max_weight: u64) -> u64 {
    ceil_log2((n as u64).saturating_mul(max_weight.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_values() {
        assert_eq!(ceil_log2(1), 1);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(1024), 10);
        assert_eq!(ceil_log2(1025), 11);
        assert_eq!(dist_bits(1024, 1), 10);
    }
}
