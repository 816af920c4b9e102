use std::io::Read;

use super::Digraph;
use crate::error::{Error, Result};

/// A recording of spike events `(time_ms, neuron)` over `[0, duration]`.
///
/// Events are kept sorted by time (ties by neuron).
#[derive(Debug, Clone, PartialEq)]
pub struct SpikeTrain {
    events: Vec<(f64, usize)>,
    duration: f64,
}

impl SpikeTrain {
    pub fn new(mut events: Vec<(f64, usize)>, duration: f64) -> Result<Self> {
        if !duration.is_finite() || duration < 0.0 {
            return Err(Error::Parameter(format!("duration {duration} must be finite and >= 0")));
        }
        if let Some(&(t, g)) = events
            .iter()
            .find(|(t, _)| !t.is_finite() || *t < 0.0 || *t > duration)
        {
            return Err(Error::Validation(format!(
                "spike of neuron {g} at {t} ms lies outside [0, {duration}]"
            )));
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(SpikeTrain { events, duration })
    }

    pub fn events(&self) -> &[(f64, usize)] {
        &self.events
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Checks every neuron index against the structural graph.
    pub fn validate_against(&self, g: &Digraph) -> Result<()> {
        match self.events.iter().find(|&&(_, n)| n >= g.vertex_count()) {
            Some(&(_, n)) => Err(Error::Range {
                index: n,
                bound: g.vertex_count(),
            }),
            None => Ok(()),
        }
    }

    /// Reads a `time,neuron` CSV. The duration is not stored in the file and
    /// must be supplied.
    pub fn from_csv<R: Read>(reader: R, duration: f64) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
            .clone();
        if headers.len() != 2 || &headers[0] != "time" || &headers[1] != "neuron" {
            return Err(Error::Parse {
                line: 1,
                msg: "expected header `time,neuron`".into(),
            });
        }
        let mut events = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            let t: f64 = rec[0].parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad time `{}`", &rec[0]),
            })?;
            let n: usize = rec[1].parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad neuron `{}`", &rec[1]),
            })?;
            events.push((t, n));
        }
        SpikeTrain::new(events, duration)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("time,neuron\n");
        for (t, n) in &self.events {
            s.push_str(&format!("{t},{n}\n"));
        }
        s
    }

    /// Number of `bin_width` bins covering `[0, duration]`.
    pub fn bin_count(&self, bin_width: f64) -> usize {
        (self.duration / bin_width).ceil() as usize
    }
}

/// Transmission-response graphs, one per time bin of width `t1`.
///
/// The graph for bin `r` contains `(i, j)` iff `(i, j)` is an edge of `g`,
/// neuron `i` spiked at some `t0` in `[r*t1, (r+1)*t1)` and neuron `j` spiked
/// at some `t` with `t0 < t <= t0 + t2`. The response spike may fall in a
/// later bin. A spike exactly at `duration` is assigned to the last bin.
pub fn transmission_response(
    g: &Digraph,
    spikes: &SpikeTrain,
    t1: f64,
    t2: f64,
) -> Result<Vec<Digraph>> {
    if !(t1 > 0.0 && t1.is_finite()) || !(t2 > 0.0 && t2.is_finite()) {
        return Err(Error::Parameter(format!(
            "bin width t1 = {t1} and response window t2 = {t2} must be positive"
        )));
    }
    spikes.validate_against(g)?;
    let bins = spikes.bin_count(t1);
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); bins];
    let ev = spikes.events();
    for (k, &(t0, i)) in ev.iter().enumerate() {
        if bins == 0 || g.out_neighbors(i).is_empty() {
            continue;
        }
        let r = ((t0 / t1).floor() as usize).min(bins - 1);
        // events are sorted, so responses form a contiguous run after k
        for &(t, j) in ev[k + 1..].iter().take_while(|(t, _)| *t <= t0 + t2) {
            if t > t0 && g.has_edge(i, j) {
                edges[r].push((i, j));
            }
        }
    }
    edges
        .into_iter()
        .map(|mut list| {
            list.sort_unstable();
            list.dedup();
            Digraph::new(g.vertex_count(), list)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_edge() -> Digraph {
        Digraph::new(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn response_inside_window() {
        let d = SpikeTrain::new(vec![(1.0, 0), (3.0, 1)], 250.0).unwrap();
        let out = transmission_response(&one_edge(), &d, 250.0, 5.0).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].has_edge(0, 1));
    }

    #[test]
    fn response_outside_window() {
        let d = SpikeTrain::new(vec![(1.0, 0), (9.0, 1)], 250.0).unwrap();
        let out = transmission_response(&one_edge(), &d, 250.0, 5.0).unwrap();
        assert_eq!(out[0].edge_count(), 0);
    }

    #[test]
    fn unsorted_input_is_sorted() {
        let d = SpikeTrain::new(vec![(3.0, 1), (1.0, 0)], 250.0).unwrap();
        let out = transmission_response(&one_edge(), &d, 250.0, 5.0).unwrap();
        assert!(out[0].has_edge(0, 1));
    }

    #[test]
    fn simultaneous_spikes_do_not_connect() {
        let d = SpikeTrain::new(vec![(2.0, 0), (2.0, 1)], 10.0).unwrap();
        let out = transmission_response(&one_edge(), &d, 10.0, 5.0).unwrap();
        assert_eq!(out[0].edge_count(), 0);
    }

    #[test]
    fn window_closed_at_right_end() {
        let d = SpikeTrain::new(vec![(2.0, 0), (7.0, 1)], 10.0).unwrap();
        let out = transmission_response(&one_edge(), &d, 10.0, 5.0).unwrap();
        assert!(out[0].has_edge(0, 1));
    }

    #[test]
    fn response_in_later_bin_counts_for_source_bin() {
        let d = SpikeTrain::new(vec![(49.0, 0), (52.0, 1)], 100.0).unwrap();
        let out = transmission_response(&one_edge(), &d, 50.0, 5.0).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out[0].has_edge(0, 1));
        assert_eq!(out[1].edge_count(), 0);
    }

    #[test]
    fn bin_count_is_ceiling() {
        let d = SpikeTrain::new(vec![], 251.0).unwrap();
        assert_eq!(transmission_response(&one_edge(), &d, 50.0, 5.0).unwrap().len(), 6);
        let d = SpikeTrain::new(vec![(250.0, 0)], 250.0).unwrap();
        assert_eq!(transmission_response(&one_edge(), &d, 50.0, 5.0).unwrap().len(), 5);
    }

    #[test]
    fn rejects_bad_parameters_and_neurons() {
        let d = SpikeTrain::new(vec![(1.0, 0)], 10.0).unwrap();
        assert!(matches!(
            transmission_response(&one_edge(), &d, 0.0, 5.0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            transmission_response(&one_edge(), &d, 5.0, -1.0),
            Err(Error::Parameter(_))
        ));
        let bad = SpikeTrain::new(vec![(1.0, 7)], 10.0).unwrap();
        assert!(matches!(
            transmission_response(&one_edge(), &bad, 5.0, 1.0),
            Err(Error::Range { index: 7, .. })
        ));
        assert!(SpikeTrain::new(vec![(11.0, 0)], 10.0).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let d = SpikeTrain::new(vec![(1.5, 0), (0.1, 3)], 10.0).unwrap();
        let back = SpikeTrain::from_csv(d.to_csv().as_bytes(), 10.0).unwrap();
        assert_eq!(d, back);
        assert!(SpikeTrain::from_csv("t,n\n1,2\n".as_bytes(), 10.0).is_err());
        assert!(matches!(
            SpikeTrain::from_csv("time,neuron\n1,x\n".as_bytes(), 10.0),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
