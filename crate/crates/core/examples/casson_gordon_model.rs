//! The coefficient model for Casson-Gordon invariants of the tripled
//! connected sum, and the non-constancy check over all metabolizers.
use concordance_genus::cgmodel::{find_collision, verify_nonconstancy, BaseFunction, CGConfiguration, Schedule, ScheduleRule};

fn main() -> concordance_genus::Result<()> {
    for n in [2, 3] {
        let cfg = CGConfiguration::new(n)?;
        println!("N = {n}: weights {:?}", cfg.schedule.0);
        for t in &cfg.triples {
            print!(" {t}");
        }
        println!();
        let r = verify_nonconstancy(&cfg);
        println!("{r}");
        for c in r.cases.iter().take(4) {
            println!("  {c}");
        }
    }
    // doubled weights collide at N = 3
    let doubling = CGConfiguration::with_base(3, BaseFunction::Zero, 0, ScheduleRule::Doubling)?;
    println!("doubling schedule {:?}", Schedule::build(3, 0, ScheduleRule::Doubling).0);
    println!("collision: {:?}", find_collision(&doubling));
    Ok(())
}
