#ifndef PLATE_ECHO_PLATE_ECHO_HPP
#define PLATE_ECHO_PLATE_ECHO_HPP

#include "plate_echo/cli.hpp"
#include "plate_echo/config.hpp"
#include "plate_echo/error.hpp"
#include "plate_echo/forward.hpp"
#include "plate_echo/geometry.hpp"
#include "plate_echo/imaging.hpp"
#include "plate_echo/io.hpp"
#include "plate_echo/nystrom.hpp"
#include "plate_echo/oracle.hpp"
#include "plate_echo/specfun.hpp"
#include "plate_echo/verify.hpp"

#endif  // PLATE_ECHO_PLATE_ECHO_HPP
