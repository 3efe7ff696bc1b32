#pragma once

#include "qrc1/syntax.hpp"
#include "qrc1/parser.hpp"
#include "qrc1/calculus.hpp"
#include "qrc1/semantics.hpp"
#include "qrc1/countermodel.hpp"
#include "qrc1/arith.hpp"
#include "qrc1/corpus.hpp"
#include "qrc1/io.hpp"
