#pragma once

/// Umbrella header: the full IR-to-graph toolkit.

#include "cpgir/support.hpp"

#include "cpgir/ir/types.hpp"
#include "cpgir/ir/ast.hpp"
#include "cpgir/ir/lexer.hpp"
#include "cpgir/ir/parser.hpp"

#include "cpgir/cpg/graph.hpp"

#include "cpgir/translate/translator.hpp"

#include "cpgir/passes/passes.hpp"
#include "cpgir/passes/reg2mem.hpp"

#include "cpgir/analysis/analysis.hpp"
#include "cpgir/analysis/interp.hpp"

#include "cpgir/export/export.hpp"

#include "cpgir/driver.hpp"
