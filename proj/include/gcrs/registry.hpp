#pragma once

#include "appart.hpp"
#include "backend.hpp"
#include "fmindex.hpp"
#include "gcc.hpp"
#include "wavelet.hpp"

namespace gcrs {

inline SequencePtr load_sequence(std::istream& is) {
    switch (static_cast<SeqKind>(read_u16(is))) {
        case SeqKind::PackedSeq:
            return PackedSeq::load(is);
        case SeqKind::GccN:
        case SeqKind::GccC:
            return GccIndex::load(is);
        case SeqKind::WaveletTree:
            return WaveletTree::load(is);
        case SeqKind::WaveletMatrix:
            return WaveletMatrix::load(is);
        case SeqKind::Ap:
            return ApIndex::load(is);
    }
    throw std::runtime_error("load_sequence: unknown kind");
}

}  // namespace gcrs
