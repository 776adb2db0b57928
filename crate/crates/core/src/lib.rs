//! Commuting operator families from Bethe subalgebras of twisted Yangians
//! on representations of sp(2n) and o(2n+1), with Gelfand-Tsetlin pattern
//! labeling of joint eigenbases via eigenline tracking.

pub mod exact;
