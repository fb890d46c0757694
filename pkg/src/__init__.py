"""Strong/weak tie network inference from fixed-choice surveys."""
