//! Counting methods: the weight with which a publication is assigned to each
//! of its units at a given level.
//!
//! Full counting gives every co-authoring unit weight one. Every other
//! method distributes a total weight of exactly one over the units, which is
//! what makes the downstream world-average identities hold. All weights are
//! exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{
    distinct_names, enumerate_units, AddressEntry, ResolvedPublication, UnitLevel,
};
use crate::rational::{rat_int, rat_zero, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountingMethod {
    Full,
    FracAuthor,
    FracAddress,
    FracOrg,
    FracCountry,
    FirstAuthor,
    CorrespondingAuthor,
}

impl CountingMethod {
    pub const ALL: [CountingMethod; 7] = [
        CountingMethod::Full,
        CountingMethod::FracAuthor,
        CountingMethod::FracAddress,
        CountingMethod::FracOrg,
        CountingMethod::FracCountry,
        CountingMethod::FirstAuthor,
        CountingMethod::CorrespondingAuthor,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CountingMethod::Full => "full",
            CountingMethod::FracAuthor => "frac-author",
            CountingMethod::FracAddress => "frac-address",
            CountingMethod::FracOrg => "frac-org",
            CountingMethod::FracCountry => "frac-country",
            CountingMethod::FirstAuthor => "first-author",
            CountingMethod::CorrespondingAuthor => "corresponding-author",
        }
    }

    /// A fractional share can only be aggregated upward: weights that
    /// originate at one granularity apply at that level and coarser ones.
    pub fn valid_at(&self, level: UnitLevel) -> bool {
        match self {
            CountingMethod::Full
            | CountingMethod::FracAuthor
            | CountingMethod::FirstAuthor
            | CountingMethod::CorrespondingAuthor => true,
            CountingMethod::FracAddress => level != UnitLevel::Author,
            CountingMethod::FracOrg => level != UnitLevel::Author,
            CountingMethod::FracCountry => level == UnitLevel::Country,
        }
    }

    pub fn valid_methods(level: UnitLevel) -> Vec<CountingMethod> {
        Self::ALL
            .into_iter()
            .filter(|m| m.valid_at(level))
            .collect()
    }

    /// Every method except full counting assigns a total weight of one.
    pub fn sums_to_one(&self) -> bool {
        *self != CountingMethod::Full
    }
}

impl fmt::Display for CountingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CountingMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown counting method '{s}'"))
    }
}

/// The weights of one publication at one level under one method, covering
/// every enumerated unit in enumeration order (zero entries included).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub publication_id: String,
    pub level: UnitLevel,
    pub method: CountingMethod,
    pub weights: Vec<(String, Rat)>,
}

impl WeightVector {
    pub fn get(&self, unit: &str) -> Option<&Rat> {
        self.weights.iter().find(|(u, _)| u == unit).map(|(_, w)| w)
    }

    pub fn total(&self) -> Rat {
        crate::rational::rat_sum(self.weights.iter().map(|(_, w)| w))
    }
}

/// Outcome of a weight computation. A publication that cannot be assigned to
/// any unit yields `Unassignable`, which is distinct from a vector of zeros.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    Assigned(WeightVector),
    Unassignable,
}

impl Weights {
    pub fn assigned(&self) -> Option<&WeightVector> {
        match self {
            Weights::Assigned(v) => Some(v),
            Weights::Unassignable => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountingError {
    #[error("counting method '{method}' is not defined at the {level} level")]
    MethodLevelMismatch {
        method: CountingMethod,
        level: UnitLevel,
    },
}

/// Distinct target-level unit names reached through a set of addresses.
fn units_of_addresses<'a>(
    addresses: impl Iterator<Item = &'a AddressEntry>,
    level: UnitLevel,
) -> Vec<String> {
    match level {
        UnitLevel::Author => unreachable!("address-derived units exist only above author level"),
        UnitLevel::Organization => distinct_names(addresses.map(|a| a.organization.as_str())),
        UnitLevel::Country => distinct_names(addresses.map(|a| a.country.as_str())),
    }
}

pub fn compute_weights(
    publication: &ResolvedPublication,
    level: UnitLevel,
    method: CountingMethod,
) -> Result<Weights, CountingError> {
    if !method.valid_at(level) {
        return Err(CountingError::MethodLevelMismatch { method, level });
    }
    if level != UnitLevel::Author && !publication.assignable {
        return Ok(Weights::Unassignable);
    }
    let units = enumerate_units(publication, level);
    if units.is_empty() {
        return Ok(Weights::Unassignable);
    }
    let index: BTreeMap<&str, usize> = units
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_str(), i))
        .collect();
    let mut weights: Vec<Rat> = vec![rat_zero(); units.len()];
    let mut add = |unit: &str, amount: Rat| {
        let i = *index
            .get(unit)
            .expect("weight-bearing unit must be among the enumerated units");
        weights[i] += amount;
    };

    // Units an author's share flows to at the target level.
    let author_units = |author_idx: usize| -> Vec<String> {
        match level {
            UnitLevel::Author => vec![units[author_idx].clone()],
            _ => units_of_addresses(publication.author_link_addresses(author_idx), level),
        }
    };

    match method {
        CountingMethod::Full => {
            for unit in &units {
                add(unit, rat_int(1));
            }
        }
        CountingMethod::FracAuthor => {
            let per_author: Vec<Vec<String>> = (0..publication.record.authors.len())
                .map(author_units)
                .collect();
            // Authors with no effective links carry no weight; their share is
            // redistributed over the linked authors so the total stays one.
            let linked = per_author.iter().filter(|u| !u.is_empty()).count();
            if linked == 0 {
                return Ok(Weights::Unassignable);
            }
            let share = Rat::new(1.into(), (linked as i64).into());
            for targets in per_author.iter().filter(|u| !u.is_empty()) {
                let split = &share / rat_int(targets.len() as u64);
                for unit in targets {
                    add(unit, split.clone());
                }
            }
        }
        CountingMethod::FracAddress => {
            let addresses = &publication.effective_addresses_for_weights;
            if addresses.is_empty() {
                return Ok(Weights::Unassignable);
            }
            let share = Rat::new(1.into(), (addresses.len() as i64).into());
            for addr in addresses {
                let name = match level {
                    UnitLevel::Organization => crate::corpus::normalize_name(&addr.organization),
                    UnitLevel::Country => crate::corpus::normalize_name(&addr.country),
                    UnitLevel::Author => unreachable!(),
                };
                add(&name, share.clone());
            }
        }
        CountingMethod::FracOrg => {
            let addresses = &publication.effective_addresses_for_weights;
            let orgs = distinct_names(addresses.iter().map(|a| a.organization.as_str()));
            if orgs.is_empty() {
                return Ok(Weights::Unassignable);
            }
            let share = Rat::new(1.into(), (orgs.len() as i64).into());
            match level {
                UnitLevel::Organization => {
                    for org in &orgs {
                        add(org, share.clone());
                    }
                }
                UnitLevel::Country => {
                    // An organization spanning several countries splits its
                    // share equally among them.
                    for org in &orgs {
                        let countries = distinct_names(
                            addresses
                                .iter()
                                .filter(|a| crate::corpus::normalize_name(&a.organization) == *org)
                                .map(|a| a.country.as_str()),
                        );
                        let split = &share / rat_int(countries.len() as u64);
                        for country in &countries {
                            add(country, split.clone());
                        }
                    }
                }
                UnitLevel::Author => unreachable!(),
            }
        }
        CountingMethod::FracCountry => {
            let countries = distinct_names(
                publication
                    .effective_addresses_for_weights
                    .iter()
                    .map(|a| a.country.as_str()),
            );
            if countries.is_empty() {
                return Ok(Weights::Unassignable);
            }
            let share = Rat::new(1.into(), (countries.len() as i64).into());
            for country in &countries {
                add(country, share.clone());
            }
        }
        CountingMethod::FirstAuthor => {
            if publication.record.authors.is_empty() {
                return Ok(Weights::Unassignable);
            }
            let targets = author_units(0);
            if targets.is_empty() {
                return Ok(Weights::Unassignable);
            }
            let split = Rat::new(1.into(), (targets.len() as i64).into());
            for unit in &targets {
                add(unit, split.clone());
            }
        }
        CountingMethod::CorrespondingAuthor => match level {
            UnitLevel::Author => {
                let Some(idx) = publication.effective_corresponding_author else {
                    return Ok(Weights::Unassignable);
                };
                let unit = units[idx].clone();
                add(&unit, rat_int(1));
            }
            _ => {
                let targets =
                    units_of_addresses(publication.corresponding_affiliation.iter(), level);
                if targets.is_empty() {
                    return Ok(Weights::Unassignable);
                }
                let split = Rat::new(1.into(), (targets.len() as i64).into());
                for unit in &targets {
                    add(unit, split.clone());
                }
            }
        },
    }

    Ok(Weights::Assigned(WeightVector {
        publication_id: publication.record.id.clone(),
        level,
        method,
        weights: units.into_iter().zip(weights).collect(),
    }))
}

/// Total weight per unit over a corpus: the weighted publication count.
/// Non-assignable publications contribute to no unit.
pub fn weighted_publication_count(
    corpus: &[ResolvedPublication],
    level: UnitLevel,
    method: CountingMethod,
) -> Result<BTreeMap<String, Rat>, CountingError> {
    let mut totals: BTreeMap<String, Rat> = BTreeMap::new();
    for publication in corpus {
        if let Weights::Assigned(vector) = compute_weights(publication, level, method)? {
            for (unit, weight) in vector.weights {
                if weight != rat_zero() {
                    *totals.entry(unit).or_insert_with(rat_zero) += weight;
                }
            }
        }
    }
    Ok(totals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{resolve, AddressEntry};
    use crate::rational::rat;
    use crate::testutil::{example_publication, single_field_corpus};

    fn weights_for(level: UnitLevel, method: CountingMethod) -> WeightVector {
        let publication = resolve(example_publication());
        match compute_weights(&publication, level, method).unwrap() {
            Weights::Assigned(v) => v,
            Weights::Unassignable => panic!("example publication must be assignable"),
        }
    }

    fn values(vector: &WeightVector) -> Vec<Rat> {
        vector.weights.iter().map(|(_, w)| w.clone()).collect()
    }

    #[test]
    fn author_level_weights_match_the_worked_example() {
        let full = weights_for(UnitLevel::Author, CountingMethod::Full);
        assert_eq!(values(&full), vec![rat_int(1); 5]);

        let frac = weights_for(UnitLevel::Author, CountingMethod::FracAuthor);
        assert_eq!(values(&frac), vec![rat(1, 5); 5]);

        let first = weights_for(UnitLevel::Author, CountingMethod::FirstAuthor);
        assert_eq!(
            values(&first),
            vec![rat_int(1), rat_zero(), rat_zero(), rat_zero(), rat_zero()]
        );

        let corresponding = weights_for(UnitLevel::Author, CountingMethod::CorrespondingAuthor);
        assert_eq!(
            values(&corresponding),
            vec![rat_zero(), rat_zero(), rat_zero(), rat_int(1), rat_zero()]
        );
    }

    #[test]
    fn organization_level_weights_match_the_worked_example() {
        let frac_org = weights_for(UnitLevel::Organization, CountingMethod::FracOrg);
        assert_eq!(values(&frac_org), vec![rat(1, 4); 4]);

        let frac_address = weights_for(UnitLevel::Organization, CountingMethod::FracAddress);
        assert_eq!(
            values(&frac_address),
            vec![rat(2, 5), rat(1, 5), rat(1, 5), rat(1, 5)]
        );

        let frac_author = weights_for(UnitLevel::Organization, CountingMethod::FracAuthor);
        assert_eq!(
            values(&frac_author),
            vec![rat(2, 5), rat(2, 5), rat(1, 10), rat(1, 10)]
        );

        let first = weights_for(UnitLevel::Organization, CountingMethod::FirstAuthor);
        assert_eq!(
            values(&first),
            vec![rat_int(1), rat_zero(), rat_zero(), rat_zero()]
        );

        let corresponding =
            weights_for(UnitLevel::Organization, CountingMethod::CorrespondingAuthor);
        assert_eq!(
            values(&corresponding),
            vec![rat_zero(), rat_int(1), rat_zero(), rat_zero()]
        );
    }

    #[test]
    fn country_level_weights_match_the_worked_example() {
        let frac_country = weights_for(UnitLevel::Country, CountingMethod::FracCountry);
        assert_eq!(values(&frac_country), vec![rat(1, 3); 3]);

        let frac_org = weights_for(UnitLevel::Country, CountingMethod::FracOrg);
        assert_eq!(values(&frac_org), vec![rat(1, 4), rat(1, 2), rat(1, 4)]);

        let frac_address = weights_for(UnitLevel::Country, CountingMethod::FracAddress);
        assert_eq!(values(&frac_address), vec![rat(2, 5), rat(2, 5), rat(1, 5)]);

        let frac_author = weights_for(UnitLevel::Country, CountingMethod::FracAuthor);
        assert_eq!(values(&frac_author), vec![rat(2, 5), rat(1, 2), rat(1, 10)]);

        let full = weights_for(UnitLevel::Country, CountingMethod::Full);
        assert_eq!(values(&full), vec![rat_int(1); 3]);

        let first = weights_for(UnitLevel::Country, CountingMethod::FirstAuthor);
        assert_eq!(values(&first), vec![rat_int(1), rat_zero(), rat_zero()]);

        let corresponding = weights_for(UnitLevel::Country, CountingMethod::CorrespondingAuthor);
        assert_eq!(values(&corresponding), vec![rat_zero(), rat_int(1), rat_zero()]);
    }

    #[test]
    fn single_author_single_address_gets_weight_one_everywhere() {
        let mut record = example_publication();
        record.authors.truncate(1);
        record.regular_addresses.truncate(1);
        record.author_address_links = Some(vec![vec![0]]);
        record.corresponding_author_index = Some(1);
        let publication = resolve(record);
        for level in UnitLevel::ALL {
            for method in CountingMethod::valid_methods(level) {
                let weights = compute_weights(&publication, level, method)
                    .unwrap()
                    .assigned()
                    .cloned()
                    .unwrap();
                assert_eq!(values(&weights), vec![rat_int(1)], "{level} {method}");
            }
        }
    }

    #[test]
    fn method_level_mismatch_is_a_usage_error() {
        let publication = resolve(example_publication());
        let err = compute_weights(&publication, UnitLevel::Author, CountingMethod::FracCountry)
            .unwrap_err();
        assert_eq!(
            err,
            CountingError::MethodLevelMismatch {
                method: CountingMethod::FracCountry,
                level: UnitLevel::Author,
            }
        );
        assert!(compute_weights(
            &publication,
            UnitLevel::Organization,
            CountingMethod::FracCountry
        )
        .is_err());
        assert!(compute_weights(
            &publication,
            UnitLevel::Author,
            CountingMethod::FracAddress
        )
        .is_err());
    }

    #[test]
    fn unassignable_is_distinct_from_all_zero() {
        let mut record = example_publication();
        record.regular_addresses.clear();
        record.reprint_address = None;
        record.author_address_links = None;
        let publication = resolve(record);
        let outcome =
            compute_weights(&publication, UnitLevel::Country, CountingMethod::Full).unwrap();
        assert_eq!(outcome, Weights::Unassignable);
        // Author-level assignment still works without any address.
        let author_level =
            compute_weights(&publication, UnitLevel::Author, CountingMethod::FracAuthor).unwrap();
        assert!(author_level.assigned().is_some());
    }

    #[test]
    fn empty_link_lists_redistribute_the_author_share() {
        let mut record = example_publication();
        record.author_address_links = Some(vec![vec![0], vec![], vec![2], vec![2], vec![3, 4]]);
        let publication = resolve(record);
        let vector = compute_weights(
            &publication,
            UnitLevel::Organization,
            CountingMethod::FracAuthor,
        )
        .unwrap()
        .assigned()
        .cloned()
        .unwrap();
        // Four linked authors share the whole weight: author 1 -> org 1,
        // authors 3 and 4 -> org 2, author 5 -> orgs 3 and 4.
        assert_eq!(
            values(&vector),
            vec![rat(1, 4), rat(1, 2), rat(1, 8), rat(1, 8)]
        );
        assert_eq!(vector.total(), rat_int(1));
    }

    #[test]
    fn multi_country_organization_splits_its_share() {
        let mut record = example_publication();
        // One organization name now spans two countries.
        record.regular_addresses = vec![
            AddressEntry::new("Org Alpha", "Country 1"),
            AddressEntry::new("Org Alpha", "Country 2"),
            AddressEntry::new("Org Beta", "Country 2"),
        ];
        record.author_address_links = None;
        let publication = resolve(record);
        let vector = compute_weights(&publication, UnitLevel::Country, CountingMethod::FracOrg)
            .unwrap()
            .assigned()
            .cloned()
            .unwrap();
        // Alpha splits 1/2 over two countries, Beta gives 1/2 to country 2.
        assert_eq!(values(&vector), vec![rat(1, 4), rat(3, 4)]);
    }

    #[test]
    fn weighted_counts_match_the_single_field_corpus() {
        let corpus = single_field_corpus();
        let full =
            weighted_publication_count(&corpus, UnitLevel::Country, CountingMethod::Full).unwrap();
        assert_eq!(full["country a"], rat_int(3));
        assert_eq!(full["country b"], rat_int(2));

        let frac =
            weighted_publication_count(&corpus, UnitLevel::Country, CountingMethod::FracCountry)
                .unwrap();
        assert_eq!(frac["country a"], rat(5, 2));
        assert_eq!(frac["country b"], rat(3, 2));

        let empty: Vec<crate::corpus::ResolvedPublication> = Vec::new();
        assert!(
            weighted_publication_count(&empty, UnitLevel::Country, CountingMethod::Full)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn reprint_only_units_get_full_weight_but_no_fractional_weight() {
        // A reprint address naming an organization absent from the regular
        // addresses: it is a co-authoring unit (full counting sees it) but
        // carries no fractional share.
        let mut record = example_publication();
        record.reprint_address = Some(AddressEntry::new("Organization 9", "Country 9"));
        record.corresponding_author_index = None;
        let publication = resolve(record);
        let units = enumerate_units(&publication, UnitLevel::Organization);
        assert_eq!(units.len(), 5);

        let full = compute_weights(&publication, UnitLevel::Organization, CountingMethod::Full)
            .unwrap()
            .assigned()
            .cloned()
            .unwrap();
        assert_eq!(full.get("organization 9"), Some(&rat_int(1)));

        let frac = compute_weights(
            &publication,
            UnitLevel::Organization,
            CountingMethod::FracAddress,
        )
        .unwrap()
        .assigned()
        .cloned()
        .unwrap();
        assert_eq!(frac.get("organization 9"), Some(&rat_zero()));
        assert_eq!(frac.total(), rat_int(1));

        // With no explicit corresponding author the reprint address stands
        // in for the corresponding affiliation.
        let corresponding = compute_weights(
            &publication,
            UnitLevel::Organization,
            CountingMethod::CorrespondingAuthor,
        )
        .unwrap()
        .assigned()
        .cloned()
        .unwrap();
        assert_eq!(corresponding.get("organization 9"), Some(&rat_int(1)));
    }
}
