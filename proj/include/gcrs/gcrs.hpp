#pragma once

#include "appart.hpp"
#include "backend.hpp"
#include "bits.hpp"
#include "bitvector.hpp"
#include "container.hpp"
#include "corpus.hpp"
#include "dac.hpp"
#include "fmindex.hpp"
#include "gcc.hpp"
#include "huffman.hpp"
#include "io.hpp"
#include "registry.hpp"
#include "repair.hpp"
#include "wavelet.hpp"
