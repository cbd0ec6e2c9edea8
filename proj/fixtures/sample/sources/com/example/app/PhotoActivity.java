package com.example.app;

import android.hardware.Camera;

public class PhotoActivity {
    private Camera camera;

    public void onResume() {
        camera = Camera.open(0);
    }

    public void onPause() {
        camera = null;
    }
}
