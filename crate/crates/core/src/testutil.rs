//! Shared builders for the unit-test corpora.

use crate::corpus::{AddressEntry, DocType, PublicationRecord, ResolvedPublication};

/// Five authors over five addresses; authors 2 and 5 have two affiliations,
/// authors 3 and 4 share one address, author 4 is the corresponding author.
pub(crate) fn example_publication() -> PublicationRecord {
    PublicationRecord {
        id: "example".into(),
        year: 2009,
        doc_type: DocType::Article,
        citations: 0,
        authors: (1..=5).map(|i| format!("Author {i}")).collect(),
        regular_addresses: vec![
            AddressEntry::new("Organization 1", "Country 1"),
            AddressEntry::new("Organization 1", "Country 1"),
            AddressEntry::new("Organization 2", "Country 2"),
            AddressEntry::new("Organization 3", "Country 2"),
            AddressEntry::new("Organization 4", "Country 3"),
        ],
        reprint_address: None,
        author_address_links: Some(vec![vec![0], vec![0, 1], vec![2], vec![2], vec![3, 4]]),
        corresponding_author_index: Some(4),
        field_assignments: vec!["F".into()],
    }
}

fn country_pub(id: &str, citations: u64, countries: &[&str], field: &str) -> PublicationRecord {
    PublicationRecord {
        id: id.into(),
        year: 2009,
        doc_type: DocType::Article,
        citations,
        authors: countries
            .iter()
            .enumerate()
            .map(|(i, _)| format!("{id}-author-{}", i + 1))
            .collect(),
        regular_addresses: countries
            .iter()
            .map(|c| AddressEntry::new(format!("University of {c}"), *c))
            .collect(),
        reprint_address: None,
        author_address_links: Some((0..countries.len()).map(|i| vec![i]).collect()),
        corresponding_author_index: None,
        field_assignments: vec![field.into()],
    }
}

/// Four publications, one field, two countries; the jointly authored one is
/// the most highly cited.
pub(crate) fn single_field_corpus() -> Vec<ResolvedPublication> {
    vec![
        country_pub("p1", 3, &["Country A"], "F"),
        country_pub("p2", 6, &["Country A"], "F"),
        country_pub("p3", 1, &["Country B"], "F"),
        country_pub("p4", 10, &["Country A", "Country B"], "F"),
    ]
    .into_iter()
    .map(crate::corpus::resolve)
    .collect()
}

/// Six publications in two fields, four countries; field Y's joint
/// publication out-performs its field while field X is flat.
pub(crate) fn two_field_corpus() -> Vec<ResolvedPublication> {
    vec![
        country_pub("p1", 10, &["Country A"], "X"),
        country_pub("p2", 10, &["Country B"], "X"),
        country_pub("p3", 10, &["Country A", "Country B"], "X"),
        country_pub("p4", 4, &["Country C"], "Y"),
        country_pub("p5", 4, &["Country D"], "Y"),
        country_pub("p6", 7, &["Country C", "Country D"], "Y"),
    ]
    .into_iter()
    .map(crate::corpus::resolve)
    .collect()
}
