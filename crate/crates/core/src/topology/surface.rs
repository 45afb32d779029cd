use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A surface of genus `genus` with `punctures` marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
}

impl Surface {
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let s = Self { genus, punctures };
        let chi = s.euler_excess();
        if chi <= 0 {
            return Err(Error::UnstableSurface(chi));
        }
        Ok(s)
    }

    /// `2g - 2 + n`, the number of pairs of pants.
    pub fn euler_excess(&self) -> i64 {
        2 * self.genus as i64 - 2 + self.punctures as i64
    }

    pub fn is_triangulable(&self) -> bool {
        self.punctures >= 1
    }

    pub fn edge_count(&self) -> usize {
        (6 * self.genus as i64 - 6 + 3 * self.punctures as i64) as usize
    }

    pub fn triangle_count(&self) -> usize {
        (4 * self.genus as i64 - 4 + 2 * self.punctures as i64) as usize
    }

    /// Number of cut curves in a pants decomposition, `3g - 3 + n`.
    pub fn cut_curve_count(&self) -> usize {
        (3 * self.genus as i64 - 3 + self.punctures as i64) as usize
    }

    pub fn pants_count(&self) -> usize {
        self.euler_excess() as usize
    }

    pub fn c11() -> Self {
        Self {
            genus: 1,
            punctures: 1,
        }
    }

    pub fn c04() -> Self {
        Self {
            genus: 0,
            punctures: 4,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(Surface::c11().edge_count(), 3);
        assert_eq!(Surface::c11().triangle_count(), 2);
        assert_eq!(Surface::c04().edge_count(), 6);
        assert_eq!(Surface::c04().triangle_count(), 4);
        assert_eq!(Surface::new(2, 1).unwrap().edge_count(), 9);
    }

    #[test]
    fn stability() {
        assert!(Surface::new(0, 3).is_ok());
        assert_eq!(Surface::new(0, 2), Err(Error::UnstableSurface(0)));
        assert_eq!(Surface::new(1, 0), Err(Error::UnstableSurface(0)));
        assert!(!Surface::new(2, 0).unwrap().is_triangulable());
    }
}
