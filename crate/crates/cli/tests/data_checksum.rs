use sha2::{Digest, Sha256};

#[test]
fn bundled_tits_data_matches_the_recorded_checksum() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let readme = std::fs::read_to_string(format!("{dir}/README.md")).unwrap();
    let recorded = readme
        .lines()
        .find_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f.len() == 3 && f[0] == "sha256" && f[2] == "tits_1600.txt").then(|| f[1].to_string())
        })
        .expect("checksum line in the data README");
    let data = std::fs::read(format!("{dir}/tits_1600.txt")).unwrap();
    assert_eq!(format!("{:x}", Sha256::digest(&data)), recorded);
    assert_eq!(data, clpforge::realize::BUNDLED_TITS.as_bytes());
}
