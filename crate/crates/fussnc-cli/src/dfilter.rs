/// Set of `d` values given as `2`, `1,3,5` or `0..4` (inclusive ranges).
/// Empty means every `d`.
pub struct DFilter(Vec<(usize, usize)>);

impl DFilter {
    pub fn parse(s: &str) -> Result<DFilter, String> {
        let mut ranges = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || format!("bad --d value {part:?}");
            let (lo, hi) = match part.split_once("..") {
                Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
                None => {
                    let v = part.parse().map_err(|_| bad())?;
                    (v, v)
                }
            };
            if lo > hi {
                return Err(bad());
            }
            ranges.push((lo, hi));
        }
        Ok(DFilter(ranges))
    }

    pub fn contains(&self, d: usize) -> bool {
        self.0.is_empty() || self.0.iter().any(|&(lo, hi)| (lo..=hi).contains(&d))
    }
}
