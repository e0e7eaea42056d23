#pragma once

#include "canonical.hpp"
#include "chordal.hpp"
#include "constructions.hpp"
#include "enumeration.hpp"
#include "errors.hpp"
#include "functors.hpp"
#include "io.hpp"
#include "labeled_graph.hpp"
#include "verdict.hpp"
#include "vine_ops.hpp"
#include "vine_poset.hpp"
