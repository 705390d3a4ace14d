# witnesskit - Source Package
