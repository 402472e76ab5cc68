//! The verification harness: a seeded corpus over every registered stage,
//! the gadget checks, and a self-test that damages gadgets on purpose.

use planred::harness::{all_hold, check_registry, default_corpus, self_test, tally, verify_gadgets, verify_reduction};

pub fn run() -> planred::Result<()> {
    let cases = default_corpus(7);
    check_registry(&cases)?;
    let verdicts = verify_reduction(&cases, None);
    let (p, f, s) = tally(&verdicts);
    println!("corpus: {} cases, pass={p} fail={f} skip={s}", cases.len());
    for v in verdicts.iter().filter(|v| !v.passed()) {
        print!("{}", v.to_text());
    }
    assert!(all_hold(&verdicts));

    let gadgets = verify_gadgets(None);
    println!("gadgets: {} checks, all hold {}", gadgets.len(), all_hold(&gadgets));

    let damaged = self_test(7)?;
    let caught = damaged.iter().filter(|v| !v.passed()).count();
    println!("self-test: {caught} of {} damaged checks failed, as they should", damaged.len());
    Ok(())
}

fn main() {
    run().expect("harness");
}
