use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as its image list.
///
/// Products compose left to right: `(a * b)(i) = b(a(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation such as `(0 1 2)(3 5)` on `degree` points.
    /// Entries may be separated by spaces or commas; `()` is the identity.
    pub fn from_cycles(degree: usize, cycles: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let s = cycles.trim();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .filter(|&i| rest[..i].trim().is_empty())
                .ok_or_else(|| Error::InvalidPermutation(format!("malformed cycles {s:?}")))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {s:?}")))?
                + open;
            let body = &rest[open + 1..close];
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad point {t:?} in {s:?}"))
                    })
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} outside 0..{degree}"
                    )));
                }
                if seen[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} repeated in {s:?}"
                    )));
                }
                seen[p] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()] as u32;
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Extends to a larger point set, fixing the new points.
    pub fn padded(&self, degree: usize) -> Permutation {
        let mut images = self.0.clone();
        images.extend(self.0.len() as u32..degree as u32);
        Permutation(images)
    }

    /// Moves the permutation to act on `offset..offset+degree` inside a set of
    /// `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.0.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Permutation(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.0[start] as usize;
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.0[next] as usize;
            }
            let body: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cycles() {
        let p = Permutation::from_cycles(7, "(1 4 2)(3 5 6)").unwrap();
        assert_eq!(p.images(), &[0, 4, 1, 5, 2, 6, 3]);
        assert_eq!(p.to_string(), "(1 4 2)(3 5 6)");
        assert!(Permutation::from_cycles(3, "()").unwrap().is_identity());
        assert_eq!(
            Permutation::from_cycles(4, "(0,1)(2,3)").unwrap().images(),
            &[1, 0, 3, 2]
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_cycles(3, "(0 3)").is_err());
        assert!(Permutation::from_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::from_cycles(3, "(0 1").is_err());
        assert!(Permutation::from_cycles(3, "0 1").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_cycles(3, "(0 1)").unwrap();
        let b = Permutation::from_cycles(3, "(1 2)").unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }
}
