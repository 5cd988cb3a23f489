#pragma once

#include "flowering/bounds.hpp"
#include "flowering/cayley.hpp"
#include "flowering/cut.hpp"
#include "flowering/error.hpp"
#include "flowering/families.hpp"
#include "flowering/field.hpp"
#include "flowering/fold.hpp"
#include "flowering/graph_code.hpp"
#include "flowering/group.hpp"
#include "flowering/linalg.hpp"
#include "flowering/lps.hpp"
#include "flowering/merkle.hpp"
#include "flowering/proof_codec.hpp"
#include "flowering/protocol.hpp"
#include "flowering/random.hpp"
#include "flowering/rational.hpp"
#include "flowering/reed_solomon.hpp"
#include "flowering/rim.hpp"
#include "flowering/sha256.hpp"
#include "flowering/simulate.hpp"
#include "flowering/spectrum.hpp"
#include "flowering/transcript.hpp"
#include "flowering/word.hpp"
