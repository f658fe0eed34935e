// Everything in one include.
#ifndef DISKOP_DISKOP_HPP
#define DISKOP_DISKOP_HPP

#include "diskop/core.hpp"
#include "diskop/error.hpp"
#include "diskop/flows.hpp"
#include "diskop/scene.hpp"
#include "diskop/separated.hpp"
#include "diskop/verify.hpp"

#endif  // DISKOP_DISKOP_HPP
