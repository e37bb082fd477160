#pragma once

// Everything except the command-line front end (wheelerkit/cli.hpp).
#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/gw.hpp"
#include "wheelerkit/io.hpp"
#include "wheelerkit/language.hpp"
#include "wheelerkit/min_wdfa.hpp"
#include "wheelerkit/ops.hpp"
#include "wheelerkit/reductions.hpp"
#include "wheelerkit/wheeler.hpp"
