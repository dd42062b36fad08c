"""QGR: exact verification of quantum Grassmannian symmetries."""
