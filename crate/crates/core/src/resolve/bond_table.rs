//! Replacement table for triple bonds, indexed by the roles of both ends in
//! the template frame. Six role pairs untwist to three straight strands;
//! the rest become two or three delta-crossings.

use super::rules::BondReplacement::{self, Deltas, Straight};
use super::rules::Port::{E, I};
use super::rules::Template;
use crate::diagram::DeltaType::{S, T, U, W};
use crate::diagram::Role::{Bottom as B, Middle as M, Top as Tp};
use crate::diagram::Roles;

const P48: Template = &[[E(0), E(5), I(0), I(0), I(1), I(1)], [E(1), E(2), E(3), E(4), I(2), I(2)]];
const P120: Template = &[[E(0), E(1), E(4), E(5), I(0), I(0)], [E(2), E(3), I(1), I(1), I(2), I(2)]];
const P143: Template = &[[E(0), E(1), I(0), I(1), E(4), E(5)], [E(2), E(3), I(1), I(2), I(2), I(0)]];
const P144: Template = &[[E(0), E(1), I(0), E(5), I(1), I(1)], [E(2), E(3), E(4), I(2), I(2), I(0)]];
const P175: Template = &[[E(0), I(0), E(4), E(5), I(1), I(1)], [E(1), E(2), E(3), I(0), I(2), I(2)]];
const P178: Template = &[[E(0), I(0), I(1), E(5), I(2), I(2)], [E(1), E(2), E(3), E(4), I(1), I(0)]];

const Q2916: Template = &[
    [E(0), E(1), E(2), I(0), I(1), I(2)],
    [E(3), E(4), I(3), I(4), I(1), I(0)],
    [E(5), I(2), I(4), I(3), I(5), I(5)],
];
const Q2987: Template = &[
    [E(0), E(1), I(0), I(0), I(1), I(2)],
    [E(2), E(3), E(4), I(3), I(4), I(1)],
    [E(5), I(2), I(4), I(5), I(5), I(3)],
];
const Q3202: Template = &[
    [E(0), E(1), I(0), I(1), I(2), E(5)],
    [E(2), I(3), I(1), I(4), I(4), I(0)],
    [E(3), E(4), I(2), I(3), I(5), I(5)],
];

const TMB: Roles = [Tp, M, B];
const TBM: Roles = [Tp, B, M];
const MTB: Roles = [M, Tp, B];
const MBT: Roles = [M, B, Tp];
const BTM: Roles = [B, Tp, M];
const BMT: Roles = [B, M, Tp];

pub(crate) fn lookup(r0: Roles, r1: Roles) -> Option<BondReplacement> {
    let rule = match (r0, r1) {
        (TMB, TBM) | (TBM, TMB) | (MTB, MBT) | (MBT, MTB) | (BTM, BMT) | (BMT, BTM) => Straight,

        (TMB, TMB) | (BTM, BTM) => Deltas(P48, &[T, T]),
        (TBM, TBM) | (BMT, BMT) => Deltas(P48, &[T, W]),
        (TMB, MTB) | (MTB, BTM) => Deltas(P178, &[U, T]),
        (MBT, TBM) | (BMT, MBT) => Deltas(P178, &[S, W]),
        (TMB, MBT) | (MBT, BTM) => Deltas(P120, &[T, T]),
        (MTB, TBM) | (BMT, MTB) => Deltas(P120, &[W, T]),
        (TMB, BMT) | (TBM, BTM) => Deltas(P143, &[T, W]),
        (BTM, TBM) | (BMT, TMB) => Deltas(P143, &[W, T]),
        (TBM, MBT) => Deltas(P175, &[T, W]),
        (BTM, MTB) => Deltas(P175, &[W, T]),
        (MTB, TMB) => Deltas(P144, &[W, S]),
        (MBT, BMT) => Deltas(P144, &[T, U]),

        (TMB, BTM) => Deltas(Q2987, &[T, S, W]),
        (MTB, MTB) => Deltas(Q2987, &[W, S, W]),
        (MBT, MBT) => Deltas(Q2987, &[T, U, T]),
        (BMT, TBM) => Deltas(Q2987, &[W, U, T]),
        (TBM, MTB) => Deltas(Q2916, &[U, T, W]),
        (MTB, BMT) => Deltas(Q2916, &[W, T, W]),
        (MBT, TMB) => Deltas(Q2916, &[T, W, T]),
        (BTM, MBT) => Deltas(Q2916, &[S, W, T]),
        (TBM, BMT) => Deltas(Q3202, &[T, W, W]),
        (BTM, TMB) => Deltas(Q3202, &[W, T, T]),
        _ => return None,
    };
    Some(rule)
}
