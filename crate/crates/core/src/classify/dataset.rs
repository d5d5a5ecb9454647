use crate::error::{Error, Result};

/// Feature rows with class labels.
///
/// Class indices follow the lexicographic order of the class names, so the
/// same label set always maps to the same indices.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub class_names: Vec<String>,
    /// Free-form note on how the features were built.
    pub descriptor: String,
}

impl LabeledDataset {
    pub fn from_named<S: AsRef<str>>(rows: Vec<Vec<f64>>, names: &[S]) -> Result<Self> {
        if rows.len() != names.len() {
            return Err(Error::param(format!(
                "{} rows but {} labels",
                rows.len(),
                names.len()
            )));
        }
        let mut class_names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        class_names.sort();
        class_names.dedup();
        let labels = names
            .iter()
            .map(|s| {
                class_names
                    .binary_search_by(|c| c.as_str().cmp(s.as_ref()))
                    .unwrap()
            })
            .collect();
        let ds = Self {
            rows,
            labels,
            class_names,
            descriptor: String::new(),
        };
        ds.validate()?;
        Ok(ds)
    }

    pub fn with_descriptor(mut self, descriptor: impl Into<String>) -> Self {
        self.descriptor = descriptor.into();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::param("dataset has no rows"));
        }
        let width = self.rows[0].len();
        if let Some(i) = self.rows.iter().position(|r| r.len() != width) {
            return Err(Error::param(format!(
                "row {i} has {} features, expected {width}",
                self.rows[i].len()
            )));
        }
        if self.labels.len() != self.rows.len() {
            return Err(Error::param("label count differs from row count"));
        }
        if self.labels.iter().any(|&l| l >= self.class_names.len()) {
            return Err(Error::param("label index outside the class list"));
        }
        if self.class_counts().iter().filter(|&&c| c > 0).count() < 2 {
            return Err(Error::param("dataset needs at least 2 classes"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_names.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub fn label_name(&self, row: usize) -> &str {
        &self.class_names[self.labels[row]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_indices_are_sorted_names() {
        let ds = LabeledDataset::from_named(vec![vec![0.0]; 3], &["b", "a", "b"]).unwrap();
        assert_eq!(ds.class_names, vec!["a", "b"]);
        assert_eq!(ds.labels, vec![1, 0, 1]);
        assert_eq!(ds.class_counts(), vec![1, 2]);
    }

    #[test]
    fn invalid_datasets() {
        assert!(LabeledDataset::from_named(vec![vec![0.0]; 2], &["a", "a"]).is_err());
        assert!(LabeledDataset::from_named(vec![vec![0.0], vec![0.0, 1.0]], &["a", "b"]).is_err());
        assert!(LabeledDataset::from_named(vec![vec![0.0]], &["a", "b"]).is_err());
    }
}
