use super::Point2;

/// Uniform bucket grid over polygon edges for bounding-box queries.
#[derive(Debug, Clone)]
pub(crate) struct EdgeIndex {
    origin: Point2,
    cell: f64,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<u32>>,
}

impl EdgeIndex {
    pub(crate) fn new(vertices: &[Point2]) -> Self {
        let n = vertices.len();
        let (mut lo, mut hi) = (vertices[0], vertices[0]);
        for v in vertices {
            lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let side = ((n as f64).sqrt().ceil() as usize).clamp(1, 256);
        let cell = span / side as f64 * (1.0 + 1e-9);
        let cols = (((hi.x - lo.x) / cell).floor() as usize + 1).min(side + 1);
        let rows = (((hi.y - lo.y) / cell).floor() as usize + 1).min(side + 1);
        let mut index = Self {
            origin: lo,
            cell,
            cols,
            rows,
            buckets: vec![Vec::new(); cols * rows],
        };
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let (c0, r0, c1, r1) = index.cell_range(a, b, 0.0);
            for r in r0..=r1 {
                for c in c0..=c1 {
                    index.buckets[r * cols + c].push(i as u32);
                }
            }
        }
        index
    }

    fn cell_range(&self, a: Point2, b: Point2, pad: f64) -> (usize, usize, usize, usize) {
        let clamp_c = |v: f64| ((v - self.origin.x) / self.cell).floor().clamp(0.0, (self.cols - 1) as f64) as usize;
        let clamp_r = |v: f64| ((v - self.origin.y) / self.cell).floor().clamp(0.0, (self.rows - 1) as f64) as usize;
        (
            clamp_c(a.x.min(b.x) - pad),
            clamp_r(a.y.min(b.y) - pad),
            clamp_c(a.x.max(b.x) + pad),
            clamp_r(a.y.max(b.y) + pad),
        )
    }

    /// Edges whose bucket overlaps the padded bounding box of `ab`, sorted and deduplicated.
    pub(crate) fn query(&self, a: Point2, b: Point2, pad: f64, out: &mut Vec<u32>) {
        out.clear();
        let (c0, r0, c1, r1) = self.cell_range(a, b, pad);
        for r in r0..=r1 {
            for c in c0..=c1 {
                out.extend_from_slice(&self.buckets[r * self.cols + c]);
            }
        }
        out.sort_unstable();
        out.dedup();
    }
}
