use std::fmt;
use std::str::FromStr;

/// Sample points given as `a,b,c` or as `start:stop:count` (log-spaced).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl Grid {
    pub fn log(start: f64, stop: f64, count: usize) -> Grid {
        if count == 1 {
            return Grid(vec![start]);
        }
        let (a, b) = (start.ln(), stop.ln());
        Grid(
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Vec<f64> {
        self.0.iter().map(|x| x * factor).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}"));
        let values = if let [start, stop, count] = s.split(':').collect::<Vec<_>>()[..] {
            let (start, stop) = (parse(start)?, parse(stop)?);
            let count: usize = count.trim().parse().map_err(|e| format!("bad count '{count}': {e}"))?;
            if !(start > 0.0 && stop > start && count >= 1) {
                return Err(format!("range grid needs 0 < start < stop and count >= 1, got '{s}'"));
            }
            Grid::log(start, stop, count).0
        } else if s.contains(':') {
            return Err(format!("range grid must be start:stop:count, got '{s}'"));
        } else {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() || values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(format!("grid values must be positive and finite, got '{s}'"));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(format!("grid must be strictly ascending, got '{s}'"));
        }
        Ok(Grid(values))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_and_range_forms() {
        assert_eq!("1,2,3".parse::<Grid>().unwrap(), Grid(vec![1.0, 2.0, 3.0]));
        let g: Grid = "1:100:3".parse().unwrap();
        assert!((g.0[1] - 10.0).abs() < 1e-12);
        assert_eq!(g.0.len(), 3);
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in ["", "1,,2", "3,2", "0:1:3", "1:2", "-1,2", "1:2:x"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}
