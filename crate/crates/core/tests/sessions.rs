use disord_core::fuzz::ObservableReport;
use disord_core::script::{run_script, Options};
use disord_core::StorageOrder;

const SCRIPTS: [&str; 3] = ["disord_session", "mvp_session", "accessor_session"];

fn script(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/scripts/{name}.dis", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn expected(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/scripts/{name}.out", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn run(name: &str, order: StorageOrder) -> (String, i32) {
    let outcome = run_script(&script(name), Options::with_order(order));
    (outcome.transcript.combined(), outcome.status)
}

// Replace every 40-digit hash with a placeholder.
fn mask_hashes(text: &str) -> String {
    text.lines()
        .map(|l| match l.strip_prefix("A disord object with hash ") {
            Some(rest) if rest.len() > 40 => format!("A disord object with hash <h>{}", &rest[40..]),
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn transcripts_match_the_golden_files() {
    for name in SCRIPTS {
        let (text, status) = run(name, StorageOrder::Insertion);
        assert_eq!(status, 0, "{name}");
        assert_eq!(text, expected(name), "{name}");
    }
}

#[test]
fn transcripts_are_deterministic() {
    for name in SCRIPTS {
        for order in [StorageOrder::Insertion, StorageOrder::Shuffle(11)] {
            assert_eq!(run(name, order), run(name, order));
        }
    }
}

// Expected output blocks, hash digits masked.
const DISORD_BLOCKS: &[&str] = &[
    "A disord object with hash <h> and elements\n[1] 81 16 49  1  4 36  9 64 25\n(in some order)",
    "A disord object with hash <h> and elements\n\
     [1] 9.111111 4.250000 7.142857 2.000000 2.500000 6.166667 3.333333\n\
     [8] 8.125000 5.200000\n(in some order)",
    "[1] 9\n[1] 1 2 3 4 5 6 7 8 9",
    "A disord object with hash <h> and elements\n[1]  9 -1  5 -7 -5  3 -3  7  1\n(in some order)",
    "A disord object with hash <h> and elements\n\
     [1] 18.1111111  3.2500000 12.1428571 -5.0000000 -2.5000000  9.1666667\n\
     [7]  0.3333333 15.1250000  6.2000000\n(in some order)",
    "A disord object with hash <h> and elements\n[1]  5  6 11  4  8  9 12 10  7\n(in some order)",
    "A disord object with hash <h> and elements\n [1]  1  2  3  4  5  6  7  8  9 10\n(in some order)",
    "A disord object with hash <h> and elements\n [1]  12  12  10   6   0  -8 -18 -30 -44 -60\n(in some order)",
    "A disord object with hash <h> and elements\n [1] FALSE FALSE FALSE FALSE  TRUE  TRUE  TRUE  TRUE  TRUE  TRUE\n(in some order)",
    "A disord object with hash <h> and elements\n [1]   1   2   3   4   0  -8 -18 -30 -44 -60\n(in some order)",
];

const MVP_BLOCKS: &[&str] = &[
    "mvp object algebraically equal to\n\
     3 a b^9 e^4 f  +  10 a c^2 e^8 f^7  +  7 a^2 b^4 d^6 e f^4  +\n\
     8 a^2 b^5 c^6 e^3  +  14 a^2 b^7 c^4 d e^2  +  4 a^4 b^6 c^5 d^11 f^4  +\n\
     2 a^4 d^6 e^5 f  +  6 a^6 b^3 c^14 f^2  +  12 a^6 d^6 f^6  +\n\
     5 a^11 e^6 f^6  +  6 b^7 c^7 e^5  +  b^8 e^7 f^12  +  4 b^10 c^3 f^7  +\n\
     2 b^10 d^10 f^4\n[1] TRUE",
    "A disord object with hash <h> and elements\n[1] 3 7 4 6 5 1 2\n(in some order)",
    "A disord object with hash <h> and elements\n[1] 5 4 7 1 6 3 2\n(in some order)",
    "mvp object algebraically equal to\n\
     7 a^2 b^4 d^6 e f^4  +  4 a^4 b^6 c^5 d^11 f^4  +  6 a^6 b^3 c^14 f^2  +\n\
     5 a^11 e^6 f^6",
    "mvp object algebraically equal to\n\
     a c^2 e^8 f^7  +  a^2 b^7 c^4 d e^2  +  a^4 d^6 e^5 f  +  b^7 c^7 e^5",
];

const ACCESSOR_BLOCKS: &[&str] = &[
    "mvp object algebraically equal to\n4  -  3 x y z  +  x^2",
    "A disord object with hash <h> and elements\n[[1]]\ncharacter(0)\n\n[[2]]\n[1] \"x\" \"y\" \"z\"\n\n[[3]]\n[1] \"x\"\n\n(in some order)",
    "A disord object with hash <h> and elements\n[[1]]\ninteger(0)\n\n[[2]]\n[1] 1 1 1\n\n[[3]]\n[1] 2\n\n(in some order)",
    "A disord object with hash <h> and elements\n[1]  4 -3  1\n(in some order)",
    "mvp object algebraically equal to\n\
     7 a^3 d^5 e^14  +  a^4 c^20 d^4 f^4  +  6 a^5 c^7 d^4 e^2  +\n\
     4 a^8 c d^5 e^6  +  5 b^2 c^6 d^2 e^7 f^6  +  2 b^4 c^8 d^20 e^10 f^2  +\n\
     3 c^12 d^8 e^4 f^12",
    "mvp object algebraically equal to\n\
     3  +  5 a b  +  8 a b c d x  -  7 a b x^2  +  2 a b^2 c d x y  -  6 x y",
    "mvp object algebraically equal to\n\
     3  +  8 A B C D X  +  2 A B^2 C D X Y  +  5 a b  -  7 a b x^2  -  6 x y",
];

#[test]
fn expected_output_blocks_are_reproduced() {
    for (name, blocks) in [
        ("disord_session", DISORD_BLOCKS),
        ("mvp_session", MVP_BLOCKS),
        ("accessor_session", ACCESSOR_BLOCKS),
    ] {
        let text = mask_hashes(&run(name, StorageOrder::Insertion).0);
        for block in blocks {
            assert!(text.contains(block), "{name}: missing\n{block}\n---- in ----\n{text}");
        }
    }
}

#[test]
fn error_messages_appear_verbatim() {
    let text = run("disord_session", StorageOrder::Insertion).0;
    for msg in [
        "if using a regular index to extract, must extract each element once and once only (or none of them)",
        "if using a regular index to replace, must specify each element once and once only",
        "do not match",
    ] {
        assert!(text.contains(msg), "{msg}");
    }
    let mvp = run("mvp_session", StorageOrder::Insertion).0;
    assert_eq!(mvp.matches("Error [HashMismatch]").count(), 3);
    assert_eq!(mvp.matches("Error [PlainVectorReplacement]").count(), 1);
}

#[test]
fn order_free_output_survives_shuffled_storage() {
    for name in SCRIPTS {
        let (reference, _) = run(name, StorageOrder::Insertion);
        let outcome = run_script(&script(name), Options::default());
        let base = ObservableReport::from_transcript(&outcome.transcript, outcome.status);
        for seed in 1..=8 {
            let shuffled = run_script(&script(name), Options::with_order(StorageOrder::Shuffle(seed)));
            let report = ObservableReport::from_transcript(&shuffled.transcript, shuffled.status);
            assert_eq!(base.first_divergence(&report), None, "{name} seed {seed}");
            // hash tokens do not depend on the storage order either
            assert_eq!(
                reference.lines().filter(|l| l.starts_with("A disord")).collect::<Vec<_>>(),
                shuffled
                    .transcript
                    .combined()
                    .lines()
                    .filter(|l| l.starts_with("A disord"))
                    .collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn hashes_are_shared_where_the_session_says_so() {
    let text = run("disord_session", StorageOrder::Insertion).0;
    let hashes: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("A disord object with hash "))
        .map(|r| &r[..40])
        .collect();
    // a, a^2, a+1/a, y, x+y, b, a, b, then d, e, e<4, d
    assert_eq!(hashes.len(), 12);
    assert!(hashes[..5].iter().all(|h| *h == hashes[0]));
    assert_ne!(hashes[5], hashes[0]);
    assert_eq!(hashes[6], hashes[0]);
    assert_eq!(hashes[7], hashes[5]);
    assert!(hashes[8..].iter().all(|h| *h == hashes[8]));

    let acc = run("accessor_session", StorageOrder::Insertion).0;
    let acc_hashes: Vec<&str> = acc
        .lines()
        .filter_map(|l| l.strip_prefix("A disord object with hash "))
        .map(|r| &r[..40])
        .collect();
    assert_eq!(acc_hashes.len(), 3);
    assert!(acc_hashes.iter().all(|h| *h == acc_hashes[0]));
}
