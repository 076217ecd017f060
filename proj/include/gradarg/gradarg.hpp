#pragma once

#include "gradarg/errors.hpp"
#include "gradarg/attack_graph.hpp"
#include "gradarg/framework_io.hpp"
#include "gradarg/generators.hpp"
#include "gradarg/graph_edit.hpp"
#include "gradarg/local_valuation.hpp"
#include "gradarg/grad_tuple.hpp"
#include "gradarg/tuple_valuation.hpp"
#include "gradarg/extensions.hpp"
#include "gradarg/acceptability.hpp"
