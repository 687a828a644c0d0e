#pragma once

#include "polybound/magnitude.hpp"
#include "polybound/bound_value.hpp"
#include "polybound/group_model.hpp"
#include "polybound/counting.hpp"
#include "polybound/extension_bounds.hpp"
#include "polybound/kodaira_pipeline.hpp"
#include "polybound/oracles.hpp"
#include "polybound/verify.hpp"
#include "polybound/report.hpp"
