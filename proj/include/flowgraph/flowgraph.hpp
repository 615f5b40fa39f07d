#pragma once

#include "flowgraph/ast.hpp"
#include "flowgraph/control_flow.hpp"
#include "flowgraph/data_flow.hpp"
#include "flowgraph/dot.hpp"
#include "flowgraph/error.hpp"
#include "flowgraph/interchange.hpp"
#include "flowgraph/lexer.hpp"
#include "flowgraph/parser.hpp"
#include "flowgraph/render.hpp"
#include "flowgraph/structure_graph.hpp"
#include "flowgraph/validation.hpp"
