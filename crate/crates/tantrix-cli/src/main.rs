fn main() {
    println!("tantrix");
}
