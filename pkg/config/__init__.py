# Config package marker
