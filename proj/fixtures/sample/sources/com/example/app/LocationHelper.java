package com.example.app;

import android.location.LocationManager;

public class LocationHelper {
    private final LocationManager manager;

    public LocationHelper(LocationManager manager) {
        this.manager = manager;
    }

    public Object lastFix() {
        return manager.getLastKnownLocation("gps");
    }
}
