package com.example.app;

import android.telephony.TelephonyManager;

public class DeviceInfo {
    public String describe(TelephonyManager telephony) {
        return telephony.getDeviceId();
    }
}
