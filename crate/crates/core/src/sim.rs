//! Synthetic corpus generator.
//!
//! Produces valid corpora with a configurable coupling between a
//! publication's unit count and its citation rate: citations are drawn from
//! an overdispersed count model (gamma-mixed Poisson) whose mean is
//! `base_rate * m^beta`, with `m` the unit count at the coupling level.
//! `beta = 0` makes citations independent of collaboration; positive `beta`
//! makes larger collaborations better cited.
//!
//! Generation is deterministic per seed and splits the seed stream per
//! (field, year) cell, so cells are independent of each other and of
//! iteration order.

use std::collections::BTreeMap;

use rand::distributions::Distribution;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Gamma, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{AddressEntry, DocType, PublicationRecord, UnitLevel};

/// A finite distribution over small positive integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Categorical {
    pub values: Vec<u32>,
    pub probs: Vec<f64>,
}

impl Categorical {
    pub fn constant(value: u32) -> Self {
        Self {
            values: vec![value],
            probs: vec![1.0],
        }
    }

    fn validate(&self, name: &str) -> Result<(), ConfigError> {
        if self.values.is_empty() || self.values.len() != self.probs.len() {
            return Err(ConfigError::BadDistribution {
                name: name.into(),
                reason: "values and probs must be non-empty and of equal length".into(),
            });
        }
        if self.values.contains(&0) {
            return Err(ConfigError::BadDistribution {
                name: name.into(),
                reason: "values must be positive".into(),
            });
        }
        if self.probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(ConfigError::BadDistribution {
                name: name.into(),
                reason: "probabilities must lie in [0, 1]".into(),
            });
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ConfigError::BadDistribution {
                name: name.into(),
                reason: format!("probabilities sum to {total}, not 1"),
            });
        }
        Ok(())
    }

    fn sample(&self, rng: &mut impl Rng) -> u32 {
        let draw: f64 = rng.gen();
        let mut cumulative = 0.0;
        for (&value, &prob) in self.values.iter().zip(&self.probs) {
            cumulative += prob;
            if draw < cumulative {
                return value;
            }
        }
        *self.values.last().expect("validated non-empty")
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YearRange {
    pub start: i32,
    pub count: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CitationModel {
    /// Mean citation count of a publication with one unit.
    pub base_rate: f64,
    /// Exponent coupling the citation mean to the unit count.
    pub beta: f64,
    /// Gamma shape of the mixing distribution; smaller is more overdispersed.
    pub dispersion: f64,
    /// Level whose unit count drives the citation mean.
    pub coupling_level: UnitLevel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulatorConfig {
    pub fields: u32,
    pub years: YearRange,
    pub pubs_per_field_year: u32,
    pub authors_per_pub: Categorical,
    pub addresses_per_author: Categorical,
    /// How many fields a publication is assigned to (its cell's field plus
    /// extras drawn from the remaining ones).
    pub fields_per_pub: Categorical,
    /// Number of distinct organizations addresses are drawn from.
    pub org_pool: u32,
    /// Number of countries the organizations are spread over.
    pub countries: u32,
    pub citation_model: CitationModel,
    /// Probability that one of the regular addresses is repeated as the
    /// reprint address.
    #[serde(default)]
    pub reprint_prob: f64,
    /// Probability that the corresponding author is designated explicitly.
    #[serde(default)]
    pub explicit_corresponding_prob: f64,
    /// Probability that the author-address links are withheld, leaving every
    /// author affiliated to all addresses.
    #[serde(default)]
    pub missing_link_prob: f64,
    /// Probability that a publication carries no address at all.
    #[serde(default)]
    pub no_address_prob: f64,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{name} must be positive")]
    NonPositive { name: String },
    #[error("distribution '{name}' is invalid: {reason}")]
    BadDistribution { name: String, reason: String },
    #[error("probability '{name}' = {value} is outside [0, 1]")]
    BadProbability { name: String, value: f64 },
    #[error("fields_per_pub can draw up to {max} fields but only {fields} exist")]
    TooManyFields { max: u32, fields: u32 },
}

impl SimulatorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positives = [
            ("fields", self.fields),
            ("years.count", self.years.count),
            ("pubs_per_field_year", self.pubs_per_field_year),
            ("org_pool", self.org_pool),
            ("countries", self.countries),
        ];
        for (name, value) in positives {
            if value == 0 {
                return Err(ConfigError::NonPositive { name: name.into() });
            }
        }
        self.authors_per_pub.validate("authors_per_pub")?;
        self.addresses_per_author.validate("addresses_per_author")?;
        self.fields_per_pub.validate("fields_per_pub")?;
        let max_fields = *self.fields_per_pub.values.iter().max().expect("non-empty");
        if max_fields > self.fields {
            return Err(ConfigError::TooManyFields {
                max: max_fields,
                fields: self.fields,
            });
        }
        for (name, value) in [
            ("reprint_prob", self.reprint_prob),
            ("explicit_corresponding_prob", self.explicit_corresponding_prob),
            ("missing_link_prob", self.missing_link_prob),
            ("no_address_prob", self.no_address_prob),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::BadProbability {
                    name: name.into(),
                    value,
                });
            }
        }
        let rate = self.citation_model.base_rate;
        if rate <= 0.0 || !rate.is_finite() {
            return Err(ConfigError::NonPositive {
                name: "citation_model.base_rate".into(),
            });
        }
        let dispersion = self.citation_model.dispersion;
        if dispersion <= 0.0 || !dispersion.is_finite() {
            return Err(ConfigError::NonPositive {
                name: "citation_model.dispersion".into(),
            });
        }
        if !self.citation_model.beta.is_finite() {
            return Err(ConfigError::BadProbability {
                name: "citation_model.beta".into(),
                value: self.citation_model.beta,
            });
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn cell_seed(seed: u64, field: u32, year: i32) -> u64 {
    splitmix64(splitmix64(seed ^ u64::from(field).wrapping_mul(0xA076_1D64_78BD_642F)) ^ (year as u64))
}

/// Generate a deterministic synthetic corpus. Identical (config, seed) pairs
/// yield identical corpora.
pub fn simulate_corpus(config: &SimulatorConfig, seed: u64) -> Result<Vec<PublicationRecord>, ConfigError> {
    config.validate()?;
    let mut corpus = Vec::new();
    for field_idx in 0..config.fields {
        for year_offset in 0..config.years.count {
            let year = config.years.start + year_offset as i32;
            let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(seed, field_idx, year));
            for pub_idx in 0..config.pubs_per_field_year {
                corpus.push(generate_publication(
                    config, field_idx, year, pub_idx, &mut rng,
                ));
            }
        }
    }
    Ok(corpus)
}

fn generate_publication(
    config: &SimulatorConfig,
    field_idx: u32,
    year: i32,
    pub_idx: u32,
    rng: &mut ChaCha8Rng,
) -> PublicationRecord {
    let id = format!("sim-{}-{}-{}", field_idx + 1, year, pub_idx);
    let author_count = config.authors_per_pub.sample(rng) as usize;
    let authors: Vec<String> = (0..author_count)
        .map(|i| format!("{id}-au{}", i + 1))
        .collect();

    let no_address = rng.gen::<f64>() < config.no_address_prob;
    let mut addresses: Vec<AddressEntry> = Vec::new();
    let mut address_index: BTreeMap<u32, usize> = BTreeMap::new();
    let mut links: Vec<Vec<usize>> = Vec::with_capacity(author_count);
    if no_address {
        links = vec![Vec::new(); author_count];
    } else {
        for _ in 0..author_count {
            let address_count = config.addresses_per_author.sample(rng) as usize;
            let mut author_links = Vec::with_capacity(address_count);
            for _ in 0..address_count {
                let org = rng.gen_range(0..config.org_pool);
                let position = *address_index.entry(org).or_insert_with(|| {
                    addresses.push(AddressEntry::new(
                        format!("Org {org:03}"),
                        format!("Country {:02}", org % config.countries),
                    ));
                    addresses.len() - 1
                });
                if !author_links.contains(&position) {
                    author_links.push(position);
                }
            }
            links.push(author_links);
        }
    }

    let field_name = |idx: u32| format!("F{}", idx + 1);
    let mut field_assignments = vec![field_name(field_idx)];
    let extra = config.fields_per_pub.sample(rng) as usize - 1;
    if extra > 0 {
        let mut others: Vec<u32> = (0..config.fields).filter(|&f| f != field_idx).collect();
        for slot in 0..extra {
            let last = others.len() - 1 - slot;
            let pick = rng.gen_range(0..=last);
            others.swap(pick, last);
        }
        let mut chosen: Vec<u32> = others[others.len() - extra..].to_vec();
        chosen.sort_unstable();
        field_assignments.extend(chosen.into_iter().map(field_name));
    }

    let reprint_address = if !addresses.is_empty() && rng.gen::<f64>() < config.reprint_prob {
        Some(addresses[rng.gen_range(0..addresses.len())].clone())
    } else {
        None
    };
    let corresponding_author_index = if rng.gen::<f64>() < config.explicit_corresponding_prob {
        Some(rng.gen_range(0..author_count) + 1)
    } else {
        None
    };
    let author_address_links = if addresses.is_empty() || rng.gen::<f64>() < config.missing_link_prob
    {
        None
    } else {
        Some(links.clone())
    };

    let coupling_m = match config.citation_model.coupling_level {
        UnitLevel::Author => author_count,
        UnitLevel::Organization => address_index.len(),
        UnitLevel::Country => {
            let mut countries: Vec<u32> =
                address_index.keys().map(|org| org % config.countries).collect();
            countries.sort_unstable();
            countries.dedup();
            countries.len()
        }
    }
    .max(1);

    let mean = config.citation_model.base_rate * (coupling_m as f64).powf(config.citation_model.beta);
    let shape = config.citation_model.dispersion;
    let lambda = Gamma::new(shape, mean / shape)
        .expect("validated parameters")
        .sample(rng);
    let citations = if lambda > 0.0 {
        Poisson::new(lambda).expect("positive rate").sample(rng) as u64
    } else {
        0
    };

    PublicationRecord {
        id,
        year,
        doc_type: DocType::Article,
        citations,
        authors,
        regular_addresses: addresses,
        reprint_address,
        author_address_links,
        corresponding_author_index,
        field_assignments,
    }
}
