use clap::Parser;
use kummer_lab::command::{AutoArgs, Command, CommandSpec, Format, MapArgs};
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["gaussian", "eisenstein", "integer"]).prop_map(String::from)
}

fn elem() -> impl Strategy<Value = String> {
    (-3i64..=3, -3i64..=3, 1i64..=6).prop_map(|(x, y, d)| format!("{x}/{d}{y:+}*z"))
}

fn matrix() -> impl Strategy<Value = String> {
    prop::array::uniform4(elem()).prop_map(|[a, b, c, d]| format!("[[{a},{b}],[{c},{d}]]"))
}

fn point() -> impl Strategy<Value = String> {
    (elem(), elem()).prop_map(|(x, y)| format!("({x},{y})"))
}

fn map_args() -> impl Strategy<Value = MapArgs> {
    prop_oneof![
        (ring(), matrix(), prop::option::of(point())).prop_map(|(ring, h, a)| MapArgs { ring, h: Some(h), a, matrix: None }),
        (ring(), prop::collection::vec(-2i64..=2, 16)).prop_map(|(ring, v)| {
            let rows: Vec<String> = v.chunks(4).map(|r| format!("[{},{},{},{}]", r[0], r[1], r[2], r[3])).collect();
            MapArgs { ring, h: None, a: None, matrix: Some(format!("[{}]", rows.join(","))) }
        }),
    ]
}

fn command() -> impl Strategy<Value = Command> {
    prop_oneof![
        (map_args(), 2u32..10).prop_map(|(map, n)| Command::Lefschetz { map, n }),
        (map_args(), 2u32..10).prop_map(|(map, n)| Command::Characters { map, n }),
        (ring(), matrix(), point(), 2u32..10, prop::option::of(1u32..25)).prop_map(|(ring, h, a, n, level)| {
            Command::Freeness { auto: AutoArgs { ring, h, a }, n, level }
        }),
        (2u32..10, 1u32..10, ring()).prop_map(|(n, d, ring)| Command::Classify { n, d: Some(d), ring, h: None, a: None }),
        (2u32..10, ring(), matrix(), prop::option::of(point()))
            .prop_map(|(n, ring, h, a)| Command::Classify { n, d: None, ring, h: Some(h), a }),
        (0u32..20, 0u32..20).prop_map(|(dim, chi)| Command::Decompose { dim, chi }),
        (2u32..10, ring(), 1u32..25, 1u32..5, prop::option::of(matrix()), any::<bool>()).prop_map(
            |(n, ring, level, max_norm, h, exhaustive)| Command::Search { n, ring, level, max_norm, h, exhaustive }
        ),
        Just(Command::VerifyPaper),
    ]
}

proptest! {
    #[test]
    fn printed_commands_parse_back(format in prop::sample::select(vec![Format::Json, Format::Text]), command in command()) {
        let spec = CommandSpec { format, command };
        let args = spec.to_args();
        let parsed = CommandSpec::try_parse_from(std::iter::once("kummer-lab".to_string()).chain(args.clone()));
        prop_assert_eq!(parsed.map_err(|e| e.to_string()), Ok(spec), "{:?}", args);
    }
}
