use ndarray::Array2;
use std::time::Instant;

fn bench_f64(m: usize, k: usize, n: usize, reps: usize) -> f64 {
    let a = Array2::<f64>::from_elem((m, k), 1.000001);
    let b = Array2::<f64>::from_elem((k, n), 0.999999);
    let t = Instant::now();
    let mut acc = 0.0;
    for _ in 0..reps {
        let c = a.dot(&b);
        acc += c[[0, 0]];
    }
    let secs = t.elapsed().as_secs_f64();
    let flops = 2.0 * (m * k * n * reps) as f64;
    eprintln!("acc={acc}");
    flops / secs / 1e9
}

fn bench_f32(m: usize, k: usize, n: usize, reps: usize) -> f64 {
    let a = Array2::<f32>::from_elem((m, k), 1.000001);
    let b = Array2::<f32>::from_elem((k, n), 0.999999);
    let t = Instant::now();
    let mut acc = 0.0;
    for _ in 0..reps {
        let c = a.dot(&b);
        acc += c[[0, 0]];
    }
    let secs = t.elapsed().as_secs_f64();
    let flops = 2.0 * (m * k * n * reps) as f64;
    eprintln!("acc={acc}");
    flops / secs / 1e9
}

fn main() {
    for (m, k, n, reps) in [
        (512usize, 512usize, 512usize, 20usize),
        (480, 64, 192, 2000),
        (160, 160, 64, 2000),
        (1920, 128, 384, 200),
        (640, 640, 128, 100),
    ] {
        let g64 = bench_f64(m, k, n, reps);
        let g32 = bench_f32(m, k, n, reps);
        println!("{m}x{k}x{n}: f64 {g64:.2} GFLOP/s   f32 {g32:.2} GFLOP/s");
    }
}
