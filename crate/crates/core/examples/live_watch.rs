//! Feeds a conversation noun by noun into an incremental window meter and
//! reports each update with its latency.

use std::time::Instant;

use semnet::dynamics::{Eviction, WindowMeter, DEFAULT_CAPACITY};
use semnet::output::sig6;
use semnet::wordnet::{load_dict_dir, resolve_dict_dir};
use semnet::MeasureConfig;

const CONVERSATION: &[&str] = &[
    "storage", "shelf", "space", "box", "storage", "drawer", "cabinet", "wall", "door", "hinge", "magnet", "color",
    "yellow", "light", "lamp", "workspace", "desk", "drawer", "idea",
];

fn main() -> semnet::Result<()> {
    let g = load_dict_dir(&resolve_dict_dir(None))?;
    let mut meter = WindowMeter::new(&g, MeasureConfig::default(), DEFAULT_CAPACITY, Eviction::Fifo)?;
    for noun in CONVERSATION {
        let start = Instant::now();
        let reading = meter.push(noun)?;
        let took = start.elapsed();
        match reading.measures {
            Some(m) => println!(
                "{:>3} {:<10} changed={:<5} ic {:<10} sim {:<10} ({took:.2?}) {:?}",
                reading.seq,
                noun,
                reading.changed,
                sig6(m.mean_ic),
                sig6(m.mean_sim),
                meter.window().members
            ),
            None => println!("{:>3} {:<10} filling", reading.seq, noun),
        }
    }
    Ok(())
}
