//! Anchor keys carried by every report line, with a short description of
//! the identity each one refers to.

pub const ANCHORS: &[(&str, &str)] = &[
    ("surface-data", "triangulation gluing, fat graph and named curves"),
    ("trace-relation", "polynomial relation among the generator trace functions"),
    ("bracket-gradient", "Poisson bracket of two generators equals the relation gradient"),
    ("flip-covariance", "trace functions are invariant under the cluster flip of shear coordinates"),
    ("double-flip", "flipping an edge twice is the identity on coordinates"),
    ("quantum-relation", "Weyl-ordered generators satisfy the quantized relations"),
    ("semiclassical-bracket", "first order in the deformation reproduces the Poisson bracket"),
    ("quantum-flip", "quantum cluster flip preserves the quantum torus relations"),
    ("pants-operators", "difference operators of the length representation satisfy the quantized relations"),
    ("kac-determinant", "level-two Gram determinant and null vector at the degenerate weight"),
    ("degenerate-equation", "second-order equation for blocks with a degenerate insertion"),
    ("vacuum-propagation", "a weight-zero insertion reduces the block to the three-point function"),
    ("tau-sum", "shift sum of c = 1 blocks solves the sigma form of Painleve VI"),
    ("parameter-dictionary", "length, momentum, weight and central charge identification"),
    ("braiding-phase", "phase of the braiding move from the conformal weights"),
    ("block-series", "conformal block expansion by Gram matrix gluing"),
];

pub fn lookup(key: &str) -> Option<&'static str> {
    ANCHORS.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<&str> = ANCHORS.iter().map(|(k, _)| *k).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), ANCHORS.len());
    }
}
